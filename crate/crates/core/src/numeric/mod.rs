//! Exact scalars, vectors, the quadratic field Q(√2), decimal rendering and
//! reproducible random streams.

mod decimal;
mod quad;
mod rat;
mod rng;
mod vec3;

use alloc::string::String;

pub use decimal::{rat_to_decimal, to_decimal, REPORT_DIGITS};
pub use quad::QuadVal;
pub use rat::Rat;
pub use rng::{sample_point, RngStream, DYADIC_BITS};
pub use vec3::{det3, orient3d, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("box has lo > hi in some coordinate")]
    EmptyBox,
}

/// Shorthand for a rational literal; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den).expect("non-zero denominator")
}
