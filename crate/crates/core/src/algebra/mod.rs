//! Exact arithmetic over ℤ and ℚ: dense polynomials, truncated power
//! series and p-adic valuations.

mod coeff;
mod padic;
mod poly;
mod series;

pub use coeff::{
    denominator_lcm, fractional_part, ln_abs_bigint, rational_from_f64, rational_to_f64,
    Coefficient,
};
pub use padic::{factorize, vp_factorial, vp_integer, vp_multinomial};
pub use poly::{IntPoly, Poly, RatPoly};
pub use series::{IntSeries, RatSeries, SeriesJson, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division leaves a nonzero remainder")]
    NonzeroRemainder,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("linear coefficient is not invertible")]
    NonInvertibleLinearTerm,
    #[error("valuation of zero is undefined")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parts sum to {sum}, expected {n}")]
    PartsMismatch { sum: u64, n: u64 },
    #[error("malformed series: {0}")]
    Malformed(String),
}
