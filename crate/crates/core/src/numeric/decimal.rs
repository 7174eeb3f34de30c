use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QuadVal, Rat};

/// Significant digits used for every decimal rendering in reports.
pub const REPORT_DIGITS: usize = 15;

fn pow10(e: i32) -> Rat {
    let p = Rat::from_bigint(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
    if e >= 0 {
        p
    } else {
        p.recip().expect("power of ten is non-zero")
    }
}

/// Correctly rounded (half away from zero) decimal with `sig` significant
/// digits. Plain notation for moderate exponents, scientific otherwise.
pub fn to_decimal(value: &QuadVal, sig: usize) -> String {
    assert!(sig > 0, "at least one significant digit");
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.signum() < 0;
    let x = value.abs();

    let mut e: i32 = 0;
    while x >= QuadVal::rational(pow10(e + 1)) {
        e += 1;
    }
    while x < QuadVal::rational(pow10(e)) {
        e -= 1;
    }

    let scaled = x.scale(&pow10(sig as i32 - 1 - e));
    let half = QuadVal::rational(Rat::new(1, 2).expect("valid"));
    let mut n = (&scaled + &half).floor();
    let limit = num_traits::pow(BigInt::from(10), sig);
    if n == limit {
        n = num_traits::pow(BigInt::from(10), sig - 1);
        e += 1;
    }
    debug_assert!(!n.is_zero() && n < limit || n == BigInt::one());
    let digits = n.to_string();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-7..sig as i32).contains(&e) {
        if e >= 0 {
            let split = e as usize + 1;
            out.push_str(&digits[..split]);
            if split < digits.len() {
                out.push('.');
                out.push_str(&digits[split..]);
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-e - 1) {
                out.push('0');
            }
            out.push_str(&digits);
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}

pub fn rat_to_decimal(value: &Rat, sig: usize) -> String {
    to_decimal(&QuadVal::rational(value.clone()), sig)
}
