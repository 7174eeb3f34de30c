use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::Rat;

/// Exact element `a + b·√2` of the field Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadVal {
    pub a: Rat,
    pub b: Rat,
}

impl QuadVal {
    pub fn new(a: Rat, b: Rat) -> QuadVal {
        QuadVal { a, b }
    }

    pub fn rational(a: Rat) -> QuadVal {
        QuadVal { a, b: Rat::ZERO }
    }

    /// `b·√2`.
    pub fn surd(b: Rat) -> QuadVal {
        QuadVal { a: Rat::ZERO, b }
    }

    pub fn sqrt2() -> QuadVal {
        QuadVal::surd(Rat::ONE)
    }

    /// The rational value, if the surd part vanishes.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Exact sign of the real number `a + b·√2`.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: |a| vs |b|·√2, compared through a² vs 2b².
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * Rat::from_integer(2);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn abs(&self) -> QuadVal {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, k: &Rat) -> QuadVal {
        QuadVal::new(&self.a * k, &self.b * k)
    }

    /// Multiplicative inverse via the conjugate; `None` for zero.
    pub fn recip(&self) -> Option<QuadVal> {
        let norm = &self.a * &self.a - &self.b * &self.b * Rat::from_integer(2);
        let inv = norm.recip()?;
        Some(QuadVal::new(&self.a * &inv, -(&self.b * &inv)))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let surd_floor = floor_times_sqrt2(&self.b);
        let candidate = (&self.a + Rat::from_bigint(surd_floor)).floor();
        // a + b√2 lies in [a + ⌊b√2⌋, a + ⌊b√2⌋ + 1).
        let next = &candidate + BigInt::one();
        if QuadVal::rational(Rat::from_bigint(next.clone())) <= *self {
            next
        } else {
            candidate
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * core::f64::consts::SQRT_2
    }
}

/// `⌊b·√2⌋` for rational `b`.
fn floor_times_sqrt2(b: &Rat) -> BigInt {
    let (p, q) = (b.numer(), b.denom());
    let p_abs = if b.is_negative() { -&p } else { p };
    // ⌊√(2p²)/q⌋ = ⌊⌊√(2p²)⌋/q⌋ for q > 0.
    let root = (&p_abs * &p_abs * BigInt::from(2)).sqrt();
    let down = root.div_floor(&q);
    if b.is_negative() {
        // b√2 is irrational for b ≠ 0, so the ceiling is floor + 1.
        -(down + BigInt::one())
    } else {
        down
    }
}

impl Ord for QuadVal {
    fn cmp(&self, other: &QuadVal) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for QuadVal {
    fn partial_cmp(&self, other: &QuadVal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rat> for QuadVal {
    fn from(a: Rat) -> Self {
        QuadVal::rational(a)
    }
}

impl Add<&QuadVal> for &QuadVal {
    type Output = QuadVal;
    fn add(self, rhs: &QuadVal) -> QuadVal {
        QuadVal::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&QuadVal> for &QuadVal {
    type Output = QuadVal;
    fn sub(self, rhs: &QuadVal) -> QuadVal {
        QuadVal::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&QuadVal> for &QuadVal {
    type Output = QuadVal;
    fn mul(self, rhs: &QuadVal) -> QuadVal {
        let two = Rat::from_integer(2);
        QuadVal::new(
            &self.a * &rhs.a + &self.b * &rhs.b * &two,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        QuadVal::new(-&self.a, -&self.b)
    }
}

impl Add for QuadVal {
    type Output = QuadVal;
    fn add(self, rhs: QuadVal) -> QuadVal {
        &self + &rhs
    }
}

impl Sub for QuadVal {
    type Output = QuadVal;
    fn sub(self, rhs: QuadVal) -> QuadVal {
        &self - &rhs
    }
}

impl Mul for QuadVal {
    type Output = QuadVal;
    fn mul(self, rhs: QuadVal) -> QuadVal {
        &self * &rhs
    }
}

impl Neg for QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        -&self
    }
}

impl fmt::Debug for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})√2", self.a, self.b)
    }
}

impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
