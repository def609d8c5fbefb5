//! Best-effort search for a monic real polynomial that exceeds 1 in modulus
//! on a sampled set, by greedy (Leja-style) root placement on a grid of the
//! complementary region. Nothing here is certified and failure is expected
//! for many inputs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::PatchError;
use crate::algebra::RatPoly;

const GRID: usize = 41;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeuristicCandidate {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub poly: RatPoly,
    pub empirical_min: f64,
}

/// Grid coordinates are multiples of `1/2^10`, so roots are exact rationals.
fn snap(x: f64) -> f64 {
    (x * 1024.0).round() / 1024.0
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)))
}

fn candidate_sites(samples: &[Complex64]) -> Vec<Complex64> {
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y1: f64 = 0.0;
    for z in samples {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y1 = y1.max(z.im.abs());
    }
    let nearest: Vec<f64> = samples
        .iter()
        .enumerate()
        .map(|(i, a)| {
            samples
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| (a - b).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut sorted = nearest.clone();
    sorted.sort_by(f64::total_cmp);
    let spacing = sorted.get(sorted.len() / 2).copied().unwrap_or(0.0);
    let mut sites = Vec::new();
    let half = (GRID / 2) as f64;
    for i in 0..GRID {
        for j in 0..=GRID / 2 {
            let re = snap(x0 + (x1 - x0) * i as f64 / (GRID - 1) as f64);
            let im = snap(y1 * j as f64 / half);
            let z = Complex64::new(re, im);
            let gap = samples
                .iter()
                .map(|s| (s - z).norm())
                .fold(f64::INFINITY, f64::min);
            if gap > 1.5 * spacing.max(1e-12) && enclosed(samples, z) {
                sites.push(z);
            }
        }
    }
    sites
}

/// True when samples surround `z` in each of eight angular sectors, i.e.
/// `z` sits in a hole of the cloud rather than outside it.
fn enclosed(samples: &[Complex64], z: Complex64) -> bool {
    let mut seen = [false; 8];
    for s in samples {
        let a = (s - z).arg() + std::f64::consts::PI;
        let k = ((a / std::f64::consts::TAU * 8.0) as usize).min(7);
        seen[k] = true;
    }
    seen.iter().all(|&b| b)
}

/// Greedily adds real roots or conjugate pairs from the complementary grid.
/// Each step maximizes the per-degree score `min_s ln |p(s)| / deg p`, and
/// the first polynomial of degree at most `degree_budget` whose empirical
/// minimum exceeds 1 is returned.
pub fn heuristic_real_candidate(
    samples: &[Complex64],
    degree_budget: usize,
) -> Result<HeuristicCandidate, PatchError> {
    if samples.is_empty() {
        return Err(PatchError::EmptySamples);
    }
    let sites = candidate_sites(samples);
    let mut logs = vec![0.0f64; samples.len()];
    let mut roots: Vec<Complex64> = Vec::new();
    let contribution = |s: &Complex64, z: Complex64| {
        let mut v = (s - z).norm().ln();
        if z.im != 0.0 {
            v += (s - z.conj()).norm().ln();
        }
        v
    };
    while roots.len() < degree_budget {
        let room = degree_budget - roots.len();
        let best = sites
            .iter()
            .filter(|z| z.im == 0.0 || room >= 2)
            .map(|&z| {
                let worst = samples
                    .iter()
                    .zip(&logs)
                    .map(|(s, l)| l + contribution(s, z))
                    .fold(f64::INFINITY, f64::min);
                let degree = roots.len() + if z.im == 0.0 { 1 } else { 2 };
                (z, worst, worst / degree as f64)
            })
            .max_by(|a, b| a.2.total_cmp(&b.2));
        let Some((z, worst, _)) = best else { break };
        for (s, l) in samples.iter().zip(logs.iter_mut()) {
            *l += contribution(s, z);
        }
        roots.push(z);
        if z.im != 0.0 {
            roots.push(z.conj());
        }
        if worst > 0.0 {
            return Ok(HeuristicCandidate {
                poly: real_poly(&roots),
                empirical_min: worst.exp(),
            });
        }
    }
    Err(PatchError::NotFound)
}

fn real_poly(roots: &[Complex64]) -> RatPoly {
    let mut p = RatPoly::one();
    let mut i = 0;
    while i < roots.len() {
        let z = roots[i];
        if z.im == 0.0 {
            p = &p * &RatPoly::new(vec![-rational(z.re), RatPoly::one().coeff(0)]);
            i += 1;
        } else {
            let quad = RatPoly::new(vec![
                rational(z.re * z.re + z.im * z.im),
                -rational(2.0 * z.re),
                RatPoly::one().coeff(0),
            ]);
            p = &p * &quad;
            i += 2;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cartesian grid points of spacing 0.1 with `inner ≤ |w| ≤ outer`.
    fn annulus(inner: f64, outer: f64) -> Vec<Complex64> {
        let n = (outer * 10.0) as i64;
        let mut out = Vec::new();
        for i in -n..=n {
            for j in -n..=n {
                let w = Complex64::new(i as f64 / 10.0, j as f64 / 10.0);
                if w.norm() >= inner && w.norm() <= outer {
                    out.push(w);
                }
            }
        }
        out
    }

    #[test]
    fn outside_disk_two_gives_x() {
        let c = heuristic_real_candidate(&annulus(2.0, 4.0), 6).unwrap();
        assert_eq!(c.poly, RatPoly::x());
        assert!((c.empirical_min - 2.0).abs() < 1e-9);
    }

    #[test]
    fn small_hole_is_obstructed() {
        assert_eq!(
            heuristic_real_candidate(&annulus(0.5, 3.0), 8),
            Err(PatchError::NotFound)
        );
    }

    #[test]
    fn empty_samples() {
        assert_eq!(
            heuristic_real_candidate(&[], 3),
            Err(PatchError::EmptySamples)
        );
    }
}
