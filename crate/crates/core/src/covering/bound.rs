use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Roots;

use super::CoveringError;
use crate::numeric::{rat, to_decimal, QuadVal, Rat, REPORT_DIGITS};

/// Case 1 applies when the central translate has at least this many
/// neighbors.
pub const CASE1_THRESHOLD_M: u64 = 63;
/// Twelve vertex triangles at least.
pub const T_MIN: u64 = 12;
/// `t ≤ 2m + 4 ≤ 128` in case 2.
pub const CASE2_T_MAX: u64 = 128;

/// Digits after the point in interval endpoints (30 significant digits for
/// values in [10, 100)).
const INTERVAL_DECIMALS: usize = 28;

/// A bound that is exact in Q(√2), or else enclosed by a decimal interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Exact(QuadVal),
    Interval { lo: Rat, hi: Rat },
}

impl BoundValue {
    pub fn exact(&self) -> Option<&QuadVal> {
        match self {
            BoundValue::Exact(q) => Some(q),
            BoundValue::Interval { .. } => None,
        }
    }

    /// Whether the true value lies in `[lo, hi]` (a point for exact values).
    pub fn encloses(&self, v: &QuadVal) -> bool {
        match self {
            BoundValue::Exact(q) => q == v,
            BoundValue::Interval { lo, hi } => {
                QuadVal::rational(lo.clone()) <= *v && *v <= QuadVal::rational(hi.clone())
            }
        }
    }
}

fn check_t(t: u64) -> Result<(), CoveringError> {
    if (T_MIN..=CASE2_T_MAX).contains(&t) {
        Ok(())
    } else {
        Err(CoveringError::TOutOfRange(t))
    }
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// `[⌊v·10^d⌋, ⌊v·10^d⌋ + 1] / 10^d` for `v = √square`, `square ≥ 0`.
fn sqrt_interval(square: &Rat, decimals: usize) -> BoundValue {
    let scale = num_traits::pow(BigInt::from(10), decimals);
    let scaled = square * &Rat::from_bigint(&scale * &scale);
    let n = scaled.floor().sqrt();
    let den = Rat::from_bigint(scale);
    let lo = &Rat::from_bigint(n) / &den;
    let hi = &lo + &den.recip().expect("non-zero");
    BoundValue::Interval { lo, hi }
}

/// `Σ λ_i³ ≥ 128√2 / (3√t)`, the power-mean consequence of `S ≥ 8√3` over
/// `t` triangles.
pub fn sum_cubes_lower_bound(t: u64) -> Result<BoundValue, CoveringError> {
    check_t(t)?;
    let t_i = t as i64;
    if let Some(k) = exact_sqrt(t) {
        return Ok(BoundValue::Exact(QuadVal::surd(rat(128, 3 * k as i64))));
    }
    if t.is_multiple_of(2) {
        if let Some(k) = exact_sqrt(t / 2) {
            return Ok(BoundValue::Exact(QuadVal::rational(rat(128, 3 * k as i64))));
        }
    }
    // Square of the bound: 128²·2 / (9t).
    Ok(sqrt_interval(&rat(32768, 9 * t_i), INTERVAL_DECIMALS))
}

/// `16√2·Σμ³ ≥ 128√2/(3√t)` decided exactly as `9t·(Σμ³)² ≥ 64`.
pub fn sum_cubes_meets_bound(sum_mu_cubed: &Rat, t: u64) -> Result<bool, CoveringError> {
    check_t(t)?;
    if sum_mu_cubed.is_negative() {
        return Ok(false);
    }
    let lhs = &(sum_mu_cubed * sum_mu_cubed) * &Rat::from_integer(9 * t as i64);
    Ok(lhs >= Rat::from_integer(64))
}

/// `1 − vol(D)/vol(P) + (m+1)·vol(T)/vol(P) = 43/64 + (m+1)/192`.
pub fn case1_bound(m: u64) -> Result<Rat, CoveringError> {
    if m < CASE1_THRESHOLD_M {
        return Err(CoveringError::WrongCase(m));
    }
    let d_share = &Rat::from_integer(168) / &Rat::from_integer(512);
    let t_share = &rat(8, 3) / &Rat::from_integer(512);
    Ok(&(Rat::ONE - d_share) + &(&t_share * &Rat::from_integer(m as i64 + 1)))
}

/// `1 + (√2/12)·L/512` with `L` the cube-sum bound at `t`.
pub fn case2_bound(t: u64) -> Result<BoundValue, CoveringError> {
    let factor = rat(1, 12 * 512);
    Ok(match sum_cubes_lower_bound(t)? {
        BoundValue::Exact(l) => {
            let scaled = &QuadVal::sqrt2() * &l.scale(&factor);
            BoundValue::Exact(&QuadVal::rational(Rat::ONE) + &scaled)
        }
        BoundValue::Interval { .. } => {
            // 1 + 1/(72√t) = 1 + √(1/(5184t)).
            match sqrt_interval(&rat(1, 5184 * t as i64), INTERVAL_DECIMALS + 2) {
                BoundValue::Interval { lo, hi } => BoundValue::Interval {
                    lo: Rat::ONE + lo,
                    hi: Rat::ONE + hi,
                },
                exact => exact,
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub case1_threshold_m: u64,
    pub case1_value: Rat,
    pub case2_t_max: u64,
    pub sum_cubes_lb: Rat,
    pub case2_value: QuadVal,
    pub final_value: QuadVal,
    pub final_decimal: String,
    /// `case2_value < case1_value`.
    pub case2_binding: bool,
    /// `final > 1 + 1227/10⁶`.
    pub exceeds_claim: bool,
}

/// The lower bound `min(case 1 at m = 63, case 2 at t = 128)`.
pub fn theorem_bound() -> BoundReport {
    let case1 = case1_bound(CASE1_THRESHOLD_M).expect("threshold is in range");
    let lb = sum_cubes_lower_bound(CASE2_T_MAX).expect("in range");
    let sum_cubes_lb = lb
        .exact()
        .and_then(|q| q.as_rational().cloned())
        .expect("t = 128 = 2·8² gives a rational");
    let case2 = case2_bound(CASE2_T_MAX)
        .expect("in range")
        .exact()
        .cloned()
        .expect("exact at t = 128");
    let case1_q = QuadVal::rational(case1.clone());
    let case2_binding = case2 < case1_q;
    let final_value = if case2_binding { case2.clone() } else { case1_q };
    let claim = QuadVal::rational(Rat::ONE + rat(1227, 1_000_000));
    BoundReport {
        case1_threshold_m: CASE1_THRESHOLD_M,
        case1_value: case1,
        case2_t_max: CASE2_T_MAX,
        sum_cubes_lb,
        case2_value: case2,
        final_decimal: to_decimal(&final_value, REPORT_DIGITS),
        exceeds_claim: final_value > claim,
        final_value,
        case2_binding,
    }
}
