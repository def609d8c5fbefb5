//! Exact and numerical tools for arithmetic capacity computations: integer
//! polynomial patching, integerizing exponents, planar Green's functions and
//! power series families.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod family;
pub mod integerization;
mod numeric;
pub mod patching;
pub mod potential;
mod serde_util;
pub mod text;

pub use num_bigint::{BigInt, BigUint};
pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Caps the global rayon pool at `ARITHCAP_THREADS` when that variable
/// holds a positive integer. Returns the cap that was applied.
pub fn init_threads_from_env() -> Option<usize> {
    let n = std::env::var("ARITHCAP_THREADS")
        .ok()?
        .trim()
        .parse::<usize>()
        .ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .ok()?;
    Some(n)
}
