//! Exponents `M` for which the top `N` coefficients of `f(x)^M` are integers,
//! for a monic `f ∈ ℚ[x]`.
//!
//! The valuation route takes `k` as the product of the coefficient
//! denominators:
//! every top coefficient of `f^M` is a sum of multinomial coefficients times
//! products with at most `N` non-leading factors, so `k^N` clears all
//! denominators and it suffices that `k^N` divides those multinomials, which
//! holds once `v_p(M) ≥ N(1 + v_p(k))` for every `p | k`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::algebra::{factorize, RatPoly, RatSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntegerizationError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("N must be at least 1")]
    EmptyTop,
    #[error("d·M = {dm} is smaller than N = {n}")]
    DegreeTooSmall { dm: String, n: usize },
    #[error("no integerizing exponent in ({lower}, {cap}]")]
    NotFound { lower: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Formula,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegerizationResult {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub m: BigUint,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub k: BigInt,
    /// `(p, required v_p(M))` for each prime dividing `k`.
    pub prime_exponents: Vec<(u64, u64)>,
    pub route: Route,
    pub verified: bool,
}

impl IntegerizationResult {
    /// `t·M` for `t = 1, 2, 3, …`; each satisfies the valuation condition
    /// whenever `M` does.
    pub fn multiples(&self) -> impl Iterator<Item = BigUint> + '_ {
        (1u64..).map(move |t| &self.m * BigUint::from(t))
    }
}

fn check_input(f: &RatPoly, n: usize) -> Result<usize, IntegerizationError> {
    if !f.is_monic() {
        return Err(IntegerizationError::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Err(IntegerizationError::ConstantPolynomial);
    }
    if n == 0 {
        return Err(IntegerizationError::EmptyTop);
    }
    Ok(d)
}

/// `f` read from the top: `Σ_s f_{d-s} y^s`, constant term 1, to order `n`.
fn reversed_series(f: &RatPoly, n: usize) -> RatSeries {
    RatSeries::new(f.reversed().into_coeffs(), n)
}

fn top_is_integral(s: &RatSeries, n: usize) -> bool {
    (1..=n).all(|i| s.coeff(i).is_integer())
}

/// `k`: product of the denominators of the non-leading coefficients.
pub fn denominator_base(f: &RatPoly) -> BigInt {
    let d = f.degree().unwrap_or(0);
    f.coeffs()[..d].iter().map(|c| c.denom().clone()).product()
}

/// Smallest exponent of the valuation form `M = ∏_{p|k} p^{N(1+v_p(k))}`.
pub fn integerizing_exponent(
    f: &RatPoly,
    n: usize,
) -> Result<IntegerizationResult, IntegerizationError> {
    check_input(f, n)?;
    let k = denominator_base(f);
    let prime_exponents: Vec<(u64, u64)> = factorize(&k)
        .into_iter()
        .map(|(p, e)| (p, n as u64 * (1 + e)))
        .collect();
    let m = prime_exponents.iter().fold(BigUint::one(), |acc, &(p, e)| {
        acc * num_traits::pow(BigUint::from(p), e as usize)
    });
    // Coefficients below degree 0 are zero, so the check stays meaningful
    // when dM < N.
    let verified = top_is_integral(&reversed_series(f, n).pow_big(&m), n);
    Ok(IntegerizationResult {
        m,
        k,
        prime_exponents,
        route: Route::Formula,
        verified,
    })
}

/// True iff the coefficients of `x^{dM-i}`, `1 ≤ i ≤ N`, of `f^M` are
/// integers. Only the top `N + 1` coefficients are ever formed.
pub fn verify_top_integrality(
    f: &RatPoly,
    m: &BigUint,
    n: usize,
) -> Result<bool, IntegerizationError> {
    let d = check_input(f, n)?;
    let dm = m * BigUint::from(d);
    if dm < BigUint::from(n) {
        return Err(IntegerizationError::DegreeTooSmall {
            dm: dm.to_string(),
            n,
        });
    }
    let top = reversed_series(f, n).pow_big(m);
    Ok(top_is_integral(&top, n))
}

/// Smallest `M ≤ cap` whose top `N` coefficients are integers.
pub fn minimal_integerizing_exponent(
    f: &RatPoly,
    n: usize,
    cap: u64,
) -> Result<IntegerizationResult, IntegerizationError> {
    minimal_integerizing_exponent_above(f, n, 0, cap)
}

/// Smallest `M` with `lower < M ≤ cap` whose top `N` coefficients are
/// integers.
///
/// Powers are built incrementally, one multiplication by the reversed `f`
/// per candidate.
pub fn minimal_integerizing_exponent_above(
    f: &RatPoly,
    n: usize,
    lower: u64,
    cap: u64,
) -> Result<IntegerizationResult, IntegerizationError> {
    check_input(f, n)?;
    let base = reversed_series(f, n);
    let mut power = RatSeries::one(n);
    for m in 1..=cap {
        power = &power * &base;
        if m <= lower {
            continue;
        }
        if top_is_integral(&power, n) {
            let k = denominator_base(f);
            let prime_exponents = factorize(&k)
                .into_iter()
                .map(|(p, _)| {
                    let v = crate::algebra::vp_integer(&BigInt::from(m), p).unwrap_or(0);
                    (p, v)
                })
                .collect();
            return Ok(IntegerizationResult {
                m: BigUint::from(m),
                k,
                prime_exponents,
                route: Route::Search,
                verified: true,
            });
        }
    }
    Err(IntegerizationError::NotFound { lower, cap })
}

/// Top `n + 1` coefficients of `f^m` (index `i` ↔ `x^{dm-i}`), for reporting.
pub fn top_coefficients(f: &RatPoly, m: &BigUint, n: usize) -> Vec<BigRational> {
    reversed_series(f, n).pow_big(m).coeffs().to_vec()
}

/// `M` as a machine integer when it fits.
pub fn exponent_u64(r: &IntegerizationResult) -> Option<u64> {
    r.m.to_u64()
}
