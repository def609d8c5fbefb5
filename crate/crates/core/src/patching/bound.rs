use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::{PatchError, RegionSpec};
use crate::algebra::{rational_to_f64, RatPoly};
use crate::numeric::{horner, poly_roots};

/// Largest resolution tried before giving up with `NoMargin`.
const MAX_REFINEMENTS: u32 = 6;

/// Denominator of the returned bound (rounded down onto this grid).
const BOUND_DENOMINATOR: u64 = 1 << 24;

fn complex_coeffs(f: &RatPoly) -> Vec<Complex64> {
    f.coeffs()
        .iter()
        .map(|c| Complex64::new(rational_to_f64(c), 0.0))
        .collect()
}

/// `Σ j |a_j| ρ^{j-1}`, a bound for `|f'|` on `|z| ≤ ρ`.
fn derivative_bound(abs: &[f64], rho: f64) -> f64 {
    abs.iter()
        .enumerate()
        .skip(1)
        .map(|(j, a)| j as f64 * a * rho.powi(j as i32 - 1))
        .sum()
}

/// `Σ |a_j| ρ^j`; scales the floating-point evaluation error.
fn magnitude_bound(abs: &[f64], rho: f64) -> f64 {
    abs.iter()
        .enumerate()
        .map(|(j, a)| a * rho.powi(j as i32))
        .sum()
}

/// Numerical check that every root of `f` lies in `U`.
pub(crate) fn roots_in_u(f: &RatPoly, region: &RegionSpec) -> bool {
    poly_roots(&complex_coeffs(f))
        .into_iter()
        .all(|z| region.in_u(z))
}

/// Lower bound for `|f|` on the arcs of one circle that may meet `K`.
fn circle_bound(
    coeffs: &[Complex64],
    abs: &[f64],
    region: &RegionSpec,
    center: Complex64,
    radius: f64,
    n: usize,
) -> Option<f64> {
    let h = 2.0 * PI * radius / n as f64;
    let outer = center.norm() + radius;
    let slack = derivative_bound(abs, outer) * h / 2.0;
    let rounding = 8.0 * abs.len() as f64 * f64::EPSILON * magnitude_bound(abs, outer);
    (0..n)
        .map(|i| center + Complex64::from_polar(radius, 2.0 * PI * i as f64 / n as f64))
        .filter(|&z| region.near_k(z, h / 2.0))
        .map(|z| horner(coeffs, z).norm())
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))))
        .map(|m| m - slack - rounding)
}

fn bound_at(f: &RatPoly, region: &RegionSpec, r: f64, n: usize) -> f64 {
    let coeffs = complex_coeffs(f);
    let abs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    let mut circles: Vec<(Complex64, f64)> = region
        .holes()
        .iter()
        .map(|h| (h.center(), h.radius))
        .collect();
    circles.push((Complex64::new(0.0, 0.0), r));
    circles
        .iter()
        .filter_map(|&(c, rho)| circle_bound(&coeffs, &abs, region, c, rho, n))
        .fold(f64::INFINITY, f64::min)
}

/// Certified lower bound for `inf |f|` over `K ∩ D̄_r`.
///
/// Requires every root of `f` to lie in `U`; then `1/f` is holomorphic on
/// the interior of `K ∩ D̄_r` and `|f|` attains its minimum on the boundary,
/// which is covered by the hole circles and `|z| = r`. Each circle is
/// sampled at `grid` points and the sampled minimum is lowered by the
/// Lipschitz slack and a floating-point rounding allowance. The resolution
/// is doubled while the bound is not positive.
pub fn certified_lower_bound(
    f: &RatPoly,
    region: &RegionSpec,
    r: &BigRational,
    grid: usize,
) -> Result<BigRational, PatchError> {
    if grid == 0 {
        return Err(PatchError::InvalidGrid);
    }
    if f.is_zero() || !roots_in_u(f, region) {
        return Err(PatchError::NoMargin);
    }
    let r = rational_to_f64(r);
    let mut n = grid;
    for _ in 0..=MAX_REFINEMENTS {
        let b = bound_at(f, region, r, n);
        if b > 0.0 {
            return Ok(floor_to_grid(b));
        }
        n *= 2;
    }
    Err(PatchError::NoMargin)
}

/// The largest multiple of `1/BOUND_DENOMINATOR` not above `x`.
pub(crate) fn floor_to_grid(x: f64) -> BigRational {
    let scaled = (x * BOUND_DENOMINATOR as f64).floor();
    let numer = BigRational::from_float(scaled)
        .map(|q| q.to_integer())
        .unwrap_or_default();
    BigRational::new(numer, BigInt::from(BOUND_DENOMINATOR))
}

/// `r^{d-1}(r - Σ|b_i|) > r`, which gives `|f(x)| > |x|` for `|x| ≥ r`.
pub(crate) fn exterior_condition(f: &RatPoly, r: &BigRational) -> bool {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return false;
    }
    let s = f.lower_abs_sum();
    if r <= &s {
        return false;
    }
    let lhs = num_traits::pow(r.clone(), d - 1) * (r - &s);
    &lhs > r
}

/// Smallest `j/4` with `r ≥ r_U` and `r > Σ|b_i| + 2`, plus the exterior
/// condition when `exterior` is set (which needs degree at least 2).
fn quarter_radius(f: &RatPoly, region: &RegionSpec, exterior: bool) -> BigRational {
    let quarter = BigRational::new(1.into(), 4.into());
    let r_u = BigRational::from_float(region.bounding_radius()).unwrap_or_default();
    let two = BigRational::from_integer(2.into());
    let floor_sum = f.lower_abs_sum() + &two;
    let start = (&r_u * BigInt::from(4)).ceil() / BigInt::from(4);
    let mut r = start.max((&floor_sum * BigInt::from(4)).floor() / BigInt::from(4));
    loop {
        if r >= r_u && r > floor_sum && (!exterior || exterior_condition(f, &r)) {
            return r;
        }
        r += &quarter;
    }
}

/// Radius used for the input polynomial before rationalization.
pub(crate) fn input_radius(m: &RatPoly, region: &RegionSpec) -> BigRational {
    quarter_radius(m, region, false)
}

/// Radius for the working polynomial; all three constraints.
pub(crate) fn choose_radius(f: &RatPoly, region: &RegionSpec) -> BigRational {
    debug_assert!(f.degree().unwrap_or(0) >= 2);
    quarter_radius(f, region, true)
}

/// Best rational approximation of `a` with denominator at most `max_den`.
pub(crate) fn best_approximation(a: &BigRational, max_den: &BigInt) -> BigRational {
    use num_integer::Integer;
    if a.denom() <= max_den {
        return a.clone();
    }
    // Continued-fraction convergents, then the best semiconvergent.
    let (mut p0, mut q0) = (BigInt::from(0), BigInt::from(1));
    let (mut p1, mut q1) = (BigInt::from(1), BigInt::from(0));
    let (mut n, mut d) = (a.numer().clone(), a.denom().clone());
    loop {
        let (t, rem) = n.div_mod_floor(&d);
        let q2 = &t * &q1 + &q0;
        if &q2 > max_den {
            let s = (max_den - &q0) / &q1;
            let semi = BigRational::new(&s * &p1 + &p0, &s * &q1 + &q0);
            let conv = BigRational::new(p1.clone(), q1.clone());
            return if (&semi - a).abs() < (&conv - a).abs() {
                semi
            } else {
                conv
            };
        }
        let p2 = &t * &p1 + &p0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        n = std::mem::replace(&mut d, rem);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bound_for_identity_on_disk() {
        let u = RegionSpec::disk(2.0).unwrap();
        let f = parse_polynomial("x").unwrap();
        let coarse = certified_lower_bound(&f, &u, &q(4, 1), 64).unwrap();
        let fine = certified_lower_bound(&f, &u, &q(4, 1), 1 << 14).unwrap();
        assert!(coarse <= fine && fine <= q(2, 1));
        assert!(rational_to_f64(&fine) > 2.0 - 1e-3);
    }

    #[test]
    fn bound_for_shifted_identity() {
        let u = RegionSpec::disk(2.0).unwrap();
        let f = parse_polynomial("x - 1/3").unwrap();
        let b = certified_lower_bound(&f, &u, &q(4, 1), 1 << 14).unwrap();
        assert!(b <= q(5, 3));
        assert!(rational_to_f64(&b) > 5.0 / 3.0 - 1e-3);
    }

    #[test]
    fn roots_in_k_have_no_margin() {
        let u = RegionSpec::disk(0.5).unwrap();
        let f = parse_polynomial("x^2 + 2").unwrap();
        assert_eq!(
            certified_lower_bound(&f, &u, &q(4, 1), 256),
            Err(PatchError::NoMargin)
        );
    }

    #[test]
    fn radius_rule() {
        let u = RegionSpec::disk(9.0).unwrap();
        let f = parse_polynomial("(x - 1/2)^2").unwrap();
        assert_eq!(choose_radius(&f, &u), q(9, 1));
        let u = RegionSpec::disk(0.5).unwrap();
        let f = parse_polynomial("x^2 - 3x").unwrap();
        // r > 5 and r(r - 3) > r
        assert_eq!(choose_radius(&f, &u), q(21, 4));
    }

    #[test]
    fn best_approximations() {
        assert_eq!(best_approximation(&q(333333, 1000000), &3.into()), q(1, 3));
        assert_eq!(best_approximation(&q(1, 2), &16.into()), q(1, 2));
        assert_eq!(best_approximation(&q(314159, 100000), &10.into()), q(22, 7));
        assert_eq!(
            best_approximation(&q(314159, 100000), &200.into()),
            q(355, 113)
        );
        assert_eq!(best_approximation(&q(-7, 5), &1.into()), q(-1, 1));
    }
}
