//! From a monic rational polynomial with `inf_K |m| > 1` to a monic integer
//! polynomial with the same property, with an exact certificate.
//!
//! `K = ℂ ∖ U` where `U` is a finite union of open disks ([`RegionSpec`]).

mod bound;
mod greedy;
mod heuristic;
mod region;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{ln_abs_bigint, rational_to_f64, IntPoly, RatPoly};
use crate::integerization::{minimal_integerizing_exponent_above, verify_top_integrality};

pub use bound::certified_lower_bound;
pub use greedy::{
    clear_fractional_parts, clear_fractional_parts_with_ledger, q_multiplicities, q_pattern_holds,
    reconstruction_holds, GreedyOutcome, GreedyStep,
};
pub use heuristic::{heuristic_real_candidate, HeuristicCandidate};
pub use region::{Hole, RegionSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatchError {
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("grid resolution must be positive")]
    InvalidGrid,
    #[error("no positive lower bound: the polynomial vanishes on or near K")]
    NoMargin,
    #[error("certified lower bound {bound} does not exceed 1")]
    InsufficientMargin { bound: String },
    #[error("required degree exceeds the cap {cap}")]
    DegreeCapExceeded { cap: usize },
    #[error("polynomial degree is too low for this step")]
    DegreeTooLow,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("top coefficients of f^M are not all integers")]
    TopCoefficientsNotIntegral,
    #[error("no candidate polynomial found")]
    NotFound,
    #[error("sample set is empty")]
    EmptySamples,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PatchConfig {
    /// Largest allowed `deg p = M·d`.
    pub max_degree: usize,
    /// Denominator limit used when rationalizing coefficients.
    pub denominator_limit: u64,
    /// Samples per circle for the certified lower bound.
    pub grid: usize,
    pub spot_samples: usize,
    pub seed: u64,
}

impl Default for PatchConfig {
    fn default() -> Self {
        PatchConfig {
            max_degree: 4096,
            denominator_limit: 1 << 20,
            grid: 1 << 18,
            spot_samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatchParams {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub epsilon: BigRational,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub r: BigRational,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub r_lower: BigRational,
    pub k: u64,
    pub n: u64,
    pub m: u64,
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpotCheck {
    pub num_samples: usize,
    /// Smallest observed `ln |p|`.
    pub min_log_abs: f64,
    /// Smallest observed `|p|`; absent when it overflows a double.
    pub min_abs_value: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchRoute {
    /// The input was already a monic integer polynomial.
    IntegerInput,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatchCertificate {
    #[serde(serialize_with = "crate::serde_util::display_vec", rename = "p_coeffs")]
    pub p_coeffs: Vec<BigInt>,
    pub degree: usize,
    pub route: PatchRoute,
    /// The rationalized (and possibly squared) polynomial that was patched.
    #[serde(serialize_with = "crate::serde_util::display")]
    pub f: RatPoly,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub input_lower_bound: BigRational,
    pub params: Option<PatchParams>,
    pub greedy_steps: usize,
    pub q_pattern_ok: bool,
    pub reconstruction_ok: bool,
    pub spot_check: SpotCheck,
    pub exact_cert_ok: bool,
}

impl PatchCertificate {
    pub fn p(&self) -> IntPoly {
        IntPoly::new(self.p_coeffs.clone())
    }
}

/// Replaces non-leading coefficients whose denominator exceeds `limit` by
/// nearby rationals, each within `ε / (2 d r^{d-1})` of the original.
pub fn rationalize(m: &RatPoly, epsilon: &BigRational, r: &BigRational, limit: u64) -> RatPoly {
    let d = m.degree().unwrap_or(0);
    if d == 0 {
        return m.clone();
    }
    let two_d = BigRational::from_integer(BigInt::from(2 * d as u64));
    let tol = epsilon / (two_d * num_traits::pow(r.clone(), d - 1));
    let limit = BigInt::from(limit.max(1));
    let mut coeffs = m.coeffs().to_vec();
    for a in coeffs.iter_mut().take(d) {
        let mut cap = limit.clone();
        loop {
            let b = bound::best_approximation(a, &cap);
            if (&b - &*a).abs() < tol {
                *a = b;
                break;
            }
            cap *= 2;
        }
    }
    RatPoly::new(coeffs)
}

fn k_inequalities(r_lower: &BigRational, r: &BigRational, d: u64, k: u64) -> bool {
    if k < d + 1 {
        return false;
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let dd = BigRational::from_integer(BigInt::from(d));
    let gap = r_lower - &one;
    if !gap.is_positive() {
        return false;
    }
    let first = num_traits::pow(r_lower.clone(), (k - 1) as usize)
        > num_traits::pow(r.clone(), d as usize) * &dd / &gap + &two;
    let second = num_traits::pow(r_lower.clone(), (k - d - 1) as usize) > &dd / &gap + &two;
    first && second
}

/// Picks `r`, the certified bound, the smallest admissible `k`, `N = dk`
/// and the smallest integerizing `M > k`.
pub fn choose_parameters(
    f: &RatPoly,
    region: &RegionSpec,
    config: &PatchConfig,
) -> Result<PatchParams, PatchError> {
    if !f.is_monic() {
        return Err(PatchError::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(PatchError::DegreeTooLow);
    }
    let r = bound::choose_radius(f, region);
    let r_lower = certified_lower_bound(f, region, &r, config.grid)?;
    if r_lower <= BigRational::one() {
        return Err(PatchError::InsufficientMargin {
            bound: r_lower.to_string(),
        });
    }
    let cap = DegreeCap(config.max_degree);
    let m_cap = (config.max_degree / d) as u64;
    let k = (d as u64 + 1..m_cap)
        .find(|&k| k_inequalities(&r_lower, &r, d as u64, k))
        .ok_or_else(|| cap.err())?;
    let n = d as u64 * k;
    let m = minimal_integerizing_exponent_above(f, n as usize, k, m_cap)
        .map_err(|_| cap.err())?
        .m
        .to_u64()
        .ok_or_else(|| cap.err())?;
    let epsilon = (&r_lower - BigRational::one()).min(BigRational::one());
    Ok(PatchParams {
        epsilon,
        r,
        r_lower,
        k,
        n,
        m,
        d: d as u64,
    })
}

struct DegreeCap(usize);

impl DegreeCap {
    fn err(&self) -> PatchError {
        PatchError::DegreeCapExceeded { cap: self.0 }
    }
}

/// Full pipeline: bound, rationalize, square if linear, choose parameters,
/// clear fractional parts, certify and spot-check.
pub fn patch(
    m: &RatPoly,
    region: &RegionSpec,
    config: &PatchConfig,
) -> Result<PatchCertificate, PatchError> {
    if !m.is_monic() {
        return Err(PatchError::NotMonic);
    }
    let r_m = bound::input_radius(m, region);
    let bound_m = if m.degree() == Some(0) {
        BigRational::one()
    } else {
        certified_lower_bound(m, region, &r_m, config.grid)?
    };
    if bound_m <= BigRational::one() {
        return Err(PatchError::InsufficientMargin {
            bound: bound_m.to_string(),
        });
    }

    if let Some(p) = m.to_integer() {
        let spot_check = spot_check(&p, region, rational_to_f64(&r_m), config);
        return Ok(PatchCertificate {
            degree: p.degree().unwrap_or(0),
            p_coeffs: p.into_coeffs(),
            route: PatchRoute::IntegerInput,
            f: m.clone(),
            input_lower_bound: bound_m,
            params: None,
            greedy_steps: 0,
            q_pattern_ok: true,
            reconstruction_ok: true,
            spot_check,
            exact_cert_ok: true,
        });
    }

    let epsilon = (&bound_m - BigRational::one()).min(BigRational::one());
    let mut f = rationalize(m, &epsilon, &r_m, config.denominator_limit);
    if f.degree().unwrap_or(0) <= 1 {
        f = f.pow(2);
    }
    let mut params = choose_parameters(&f, region, config)?;
    params.epsilon = epsilon;
    let outcome = clear_fractional_parts_with_ledger(&f, params.m, params.n as usize)?;
    let reconstruction_ok = reconstruction_holds(&f, params.m, &outcome);
    let q_pattern_ok = q_pattern_holds(&outcome.ledger, params.d, params.m, params.k);
    let exact_cert_ok = reconstruction_ok && certify(&f, region, &params, &outcome.p);
    let spot_check = spot_check(&outcome.p, region, rational_to_f64(&params.r), config);
    Ok(PatchCertificate {
        degree: outcome.p.degree().unwrap_or(0),
        greedy_steps: outcome.ledger.len(),
        p_coeffs: outcome.p.into_coeffs(),
        route: PatchRoute::Greedy,
        f,
        input_lower_bound: bound_m,
        params: Some(params),
        q_pattern_ok,
        reconstruction_ok,
        spot_check,
        exact_cert_ok,
    })
}

/// Re-checks every exact condition the bound `inf_K |p| > 1` rests on.
pub fn certify(f: &RatPoly, region: &RegionSpec, params: &PatchParams, p: &IntPoly) -> bool {
    let PatchParams {
        r,
        r_lower,
        k,
        n,
        m,
        d,
        ..
    } = params;
    let r_u = BigRational::from_float(region.bounding_radius()).unwrap_or_default();
    f.degree() == Some(*d as usize)
        && *r >= r_u
        && *r_lower > BigRational::one()
        && bound::exterior_condition(f, r)
        && k_inequalities(r_lower, r, *d, *k)
        && *n == d * k
        && m > k
        && p.is_monic()
        && p.degree() == Some((m * d) as usize)
        && verify_top_integrality(f, &BigUint::from(*m), *n as usize).unwrap_or(false)
}

/// `ln |p(x)|` computed exactly at the Gaussian dyadic point nearest `x`.
fn exact_log_abs(p: &IntPoly, x: Complex64) -> f64 {
    const SHIFT: usize = 40;
    let scale = (1u64 << SHIFT) as f64;
    let xr = BigInt::from((x.re * scale).round() as i64);
    let xi = BigInt::from((x.im * scale).round() as i64);
    let deg = p.degree().unwrap_or(0);
    let (mut re, mut im) = (p.coeff(deg), BigInt::zero());
    for j in (0..deg).rev() {
        let nr = &re * &xr - &im * &xi + (p.coeff(j) << (SHIFT * (deg - j)));
        let ni = &re * &xi + &im * &xr;
        re = nr;
        im = ni;
    }
    let norm2 = &re * &re + &im * &im;
    0.5 * ln_abs_bigint(&norm2) - (SHIFT * deg) as f64 * std::f64::consts::LN_2
}

/// Sample points of `K ∩ D̄_r`: half drawn uniformly from the disk, the rest
/// spread over the boundary circles.
fn spot_points(region: &RegionSpec, r: f64, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(count);
    let wanted = count / 2;
    for _ in 0..100 * count {
        if pts.len() >= wanted {
            break;
        }
        let z = Complex64::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if z.norm() <= r && region.in_k(z) {
            pts.push(z);
        }
    }
    let need = count - pts.len();
    let mut circles: Vec<(Complex64, f64)> = region
        .holes()
        .iter()
        .map(|h| (h.center(), h.radius))
        .collect();
    circles.push((Complex64::new(0.0, 0.0), r));
    let tol = 1e-9 * r.max(1.0);
    let pool: Vec<Complex64> = circles
        .iter()
        .flat_map(|&(c, rho)| {
            (0..need.max(1)).map(move |i| {
                c + Complex64::from_polar(rho, std::f64::consts::TAU * i as f64 / need as f64)
            })
        })
        .filter(|z| z.norm() <= r + tol && region.near_k(*z, tol))
        .collect();
    if !pool.is_empty() {
        pts.extend((0..need).map(|i| pool[i * pool.len() / need]));
    }
    pts
}

fn spot_check(p: &IntPoly, region: &RegionSpec, r: f64, config: &PatchConfig) -> SpotCheck {
    let pts = spot_points(region, r, config.spot_samples, config.seed);
    let min_log_abs = pts
        .par_iter()
        .map(|&z| exact_log_abs(p, z))
        .reduce(|| f64::INFINITY, f64::min);
    let v = min_log_abs.exp();
    SpotCheck {
        num_samples: pts.len(),
        min_log_abs,
        min_abs_value: (v.is_finite() && !pts.is_empty()).then_some(v),
    }
}
