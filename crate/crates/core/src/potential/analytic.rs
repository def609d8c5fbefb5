use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::domain::DomainSpec;
use super::PotentialError;
use crate::algebra::{Coefficient, Poly};
use crate::numeric::{horner, poly_roots};

/// Holomorphic map given by data that can be evaluated pointwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalyticMap {
    /// `Σ coeffs[k] z^k`.
    Polynomial { coeffs: Vec<Complex64> },
    /// `Σ coeffs[k] (z - center)^k`, trusted for `|z - center| < radius`.
    Series {
        center: Complex64,
        coeffs: Vec<Complex64>,
        radius: f64,
    },
    /// `outer ∘ inner`.
    Compose {
        outer: Box<AnalyticMap>,
        inner: Box<AnalyticMap>,
    },
}

impl AnalyticMap {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::default()) {
            coeffs.pop();
        }
        AnalyticMap::Polynomial { coeffs }
    }

    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_poly<C: Coefficient>(p: &Poly<C>) -> Self {
        Self::real_polynomial(&p.to_f64_coeffs())
    }

    /// `z ↦ z`.
    pub fn identity() -> Self {
        Self::real_polynomial(&[0.0, 1.0])
    }

    /// `outer ∘ inner`; exact coefficient composition when both are
    /// polynomials.
    pub fn compose(outer: &AnalyticMap, inner: &AnalyticMap) -> Self {
        if let (Some(a), Some(b)) = (outer.as_polynomial(), inner.as_polynomial()) {
            let mut acc: Vec<Complex64> = vec![Complex64::default()];
            for c in a.iter().rev() {
                acc = poly_mul(&acc, b);
                acc[0] += c;
            }
            return Self::polynomial(acc);
        }
        AnalyticMap::Compose {
            outer: Box::new(outer.clone()),
            inner: Box::new(inner.clone()),
        }
    }

    pub fn as_polynomial(&self) -> Option<&[Complex64]> {
        match self {
            AnalyticMap::Polynomial { coeffs } => Some(coeffs),
            _ => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, PotentialError> {
        match self {
            AnalyticMap::Polynomial { coeffs } => Ok(horner(coeffs, z)),
            AnalyticMap::Series {
                center,
                coeffs,
                radius,
            } => {
                if (z - center).norm() >= *radius {
                    return Err(PotentialError::OutsideRadius);
                }
                Ok(horner(coeffs, z - center))
            }
            AnalyticMap::Compose { outer, inner } => outer.eval(inner.eval(z)?),
        }
    }

    /// Radius of a disk about `z` on which evaluation is trusted.
    fn radius_at(&self, z: Complex64) -> f64 {
        match self {
            AnalyticMap::Polynomial { .. } => f64::INFINITY,
            AnalyticMap::Series { center, radius, .. } => radius - (z - center).norm(),
            AnalyticMap::Compose { inner, .. } => inner.radius_at(z),
        }
    }

    /// Coefficients `f(z) - y` with the constant adjusted.
    fn shifted(&self, y: Complex64) -> Result<Vec<Complex64>, PotentialError> {
        let mut c = self
            .as_polynomial()
            .ok_or(PotentialError::NotPolynomial)?
            .to_vec();
        if c.len() < 2 {
            return Err(PotentialError::ConstantMap);
        }
        c[0] -= y;
        Ok(c)
    }
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Leading Taylor data of `f - f(O)` at the marked point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JetData {
    pub vanishing_order: usize,
    /// `c_e, c_{e+1}, …` in the coordinate `z - O`.
    pub coeffs: Vec<Complex64>,
    /// `f(O)`.
    pub value_at_center: Complex64,
    /// Absolute cutoff below which coefficients counted as zero.
    pub tolerance: f64,
}

impl JetData {
    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }
}

/// Taylor coefficients at `O` up to `order` from trapezoid Cauchy
/// integrals on a circle inside the domain. A coefficient counts as zero
/// when it is below `vanishing_tolerance` times the largest one.
pub fn taylor_jet(
    f: &AnalyticMap,
    domain: &DomainSpec,
    order: usize,
    vanishing_tolerance: f64,
) -> Result<JetData, PotentialError> {
    let o = domain.center();
    let order = order.max(1);
    let r = 0.5 * domain.boundary_distance(o).min(f.radius_at(o));
    if !(r > 0.0) {
        return Err(PotentialError::OutsideRadius);
    }
    let n = (2 * order + 16).next_power_of_two().max(64);
    let vals = (0..n)
        .map(|j| f.eval(o + Complex64::from_polar(r, TAU * j as f64 / n as f64)))
        .collect::<Result<Vec<_>, _>>()?;
    let coeffs: Vec<Complex64> = (0..=order)
        .map(|k| {
            let s: Complex64 = vals
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -TAU * (j * k % n) as f64 / n as f64))
                .sum();
            s / (n as f64 * r.powi(k as i32))
        })
        .collect();
    let biggest = coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    if biggest <= 1e-13 * coeffs[0].norm().max(1.0) {
        return Err(PotentialError::AllCoefficientsBelowTolerance);
    }
    let tolerance = vanishing_tolerance * biggest;
    let e = (1..=order)
        .find(|&k| coeffs[k].norm() > tolerance)
        .ok_or(PotentialError::AllCoefficientsBelowTolerance)?;
    Ok(JetData {
        vanishing_order: e,
        coeffs: coeffs[e..].to_vec(),
        value_at_center: coeffs[0],
        tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Preimage {
    pub point: Complex64,
    pub multiplicity: usize,
    /// In the interior of the domain.
    pub inside: bool,
}

/// Roots of `f(z) = y`, clustered into points with multiplicity.
pub fn preimages(
    f: &AnalyticMap,
    y: Complex64,
    domain: &DomainSpec,
) -> Result<Vec<Preimage>, PotentialError> {
    let coeffs = f.shifted(y)?;
    Ok(cluster(&poly_roots(&coeffs))
        .into_iter()
        .map(|(point, multiplicity)| Preimage {
            point,
            multiplicity,
            inside: domain.contains(point),
        })
        .collect())
}

/// Merges roots closer than a relative `1e-5`; clusters are represented by
/// their mean.
pub(crate) fn cluster(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in roots {
        let near = groups.iter_mut().find(|g| {
            let m: Complex64 = g.iter().sum::<Complex64>() / g.len() as f64;
            (m - z).norm() <= 1e-5 * (1.0 + z.norm())
        });
        match near {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    groups
        .into_iter()
        .map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect()
}

/// All roots of `f(z) = y` with multiplicity, unclustered.
pub(crate) fn fiber(f: &AnalyticMap, y: Complex64) -> Result<Vec<Complex64>, PotentialError> {
    Ok(poly_roots(&f.shifted(y)?))
}
