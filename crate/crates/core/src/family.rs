//! Integer power series `Σ a_n / q(X)^n` with `q(X) = p(1/X)` for a monic
//! integer polynomial `p`, indexed by bounded integer seed sequences.
//!
//! Since `1/q(X)^n` starts at `X^{mn}` (`m = deg p`), distinct seeds give
//! distinct series, and the truncations at order `D` separate every pair of
//! seeds that differ within their first `⌊D/m⌋` entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{IntPoly, IntSeries};
use crate::numeric::horner;
use crate::potential::{AnalyticMap, DomainSpec, PotentialError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("seed entry {index} exceeds the bound {bound}")]
    SeedOutOfBound { index: usize, bound: u64 },
    #[error("phi vanishes at sample point {0}")]
    SampleSingularity(Complex64),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// Bounded integer sequence `a_1, a_2, …`, zero past the stored prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSequence {
    values: Vec<i64>,
    bound: u64,
}

impl SeedSequence {
    pub fn new(values: Vec<i64>, bound: u64) -> Result<Self, FamilyError> {
        if let Some(index) = values.iter().position(|v| v.unsigned_abs() > bound) {
            return Err(FamilyError::SeedOutOfBound { index, bound });
        }
        Ok(SeedSequence { values, bound })
    }

    /// The first `len` binary digits of `x ∈ [0, 1)`.
    pub fn from_bits(x: f64, len: usize) -> Self {
        let mut frac = x.rem_euclid(1.0);
        let values = (0..len)
            .map(|_| {
                frac *= 2.0;
                let bit = frac >= 1.0;
                if bit {
                    frac -= 1.0;
                }
                bit as i64
            })
            .collect();
        SeedSequence { values, bound: 1 }
    }

    pub fn random<R: Rng>(len: usize, bound: u64, rng: &mut R) -> Self {
        let b = bound.min(i64::MAX as u64) as i64;
        SeedSequence {
            values: (0..len).map(|_| rng.gen_range(-b..=b)).collect(),
            bound,
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `a_n` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> i64 {
        n.checked_sub(1)
            .and_then(|i| self.values.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Entrywise sum; the bound is the sum of the bounds.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.values.len().max(other.values.len());
        SeedSequence {
            values: (1..=len).map(|n| self.get(n) + other.get(n)).collect(),
            bound: self.bound + other.bound,
        }
    }
}

/// `count` seeds of length `len` with entries in `[-bound, bound]`, from a
/// ChaCha stream keyed by `seed`.
pub fn random_seeds(count: usize, len: usize, bound: u64, seed: u64) -> Vec<SeedSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| SeedSequence::random(len, bound, &mut rng))
        .collect()
}

fn degree_of_monic(p: &IntPoly) -> Result<usize, FamilyError> {
    if !p.is_monic() {
        return Err(FamilyError::NotMonic);
    }
    Ok(p.degree().unwrap_or(0))
}

/// `1/q(X) = X^m / (X^m p(1/X))` to order `d`.
pub fn q_inverse_series(p: &IntPoly, d: usize) -> Result<IntSeries, FamilyError> {
    let m = degree_of_monic(p)?;
    let rev = IntSeries::new(p.reversed().into_coeffs(), d);
    let inv = rev.reciprocal(d).map_err(|_| FamilyError::NotMonic)?;
    let mut coeffs = vec![BigInt::zero(); m.min(d + 1)];
    coeffs.extend(inv.coeffs().iter().take((d + 1).saturating_sub(m)).cloned());
    Ok(IntSeries::new(coeffs, d))
}

/// `Σ_{mn ≤ d} a_n (1/q)^n` to order `d`.
pub fn family_member(p: &IntPoly, seed: &SeedSequence, d: usize) -> Result<IntSeries, FamilyError> {
    let m = degree_of_monic(p)?;
    let u = q_inverse_series(p, d)?;
    let mut acc = IntSeries::zero(d);
    let mut power = IntSeries::one(d);
    let terms = seed
        .values
        .len()
        .min(d.checked_div(m).unwrap_or(usize::MAX));
    for n in 1..=terms {
        power = &power * &u;
        let a = seed.get(n);
        if a != 0 {
            acc = &acc + &power.scale(&BigInt::from(a));
        }
    }
    Ok(acc)
}

/// Family members for many seeds, in input order.
pub fn family_members(
    p: &IntPoly,
    seeds: &[SeedSequence],
    d: usize,
) -> Result<Vec<IntSeries>, FamilyError> {
    seeds.par_iter().map(|s| family_member(p, s, d)).collect()
}

/// `g ∘ f` to order `d`; `f` must have zero constant term.
pub fn compose_with_f(g: &IntSeries, f: &IntSeries, d: usize) -> Result<IntSeries, FamilyError> {
    g.compose(f, d)
        .map_err(|_| FamilyError::NonzeroConstantTerm)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctnessReport {
    pub distinct: bool,
    /// Indices of the first colliding pair.
    pub collision: Option<(usize, usize)>,
}

pub fn distinctness_check(
    p: &IntPoly,
    seeds: &[SeedSequence],
    d: usize,
) -> Result<DistinctnessReport, FamilyError> {
    let members = family_members(p, seeds, d)?;
    let mut seen: HashMap<&IntSeries, usize> = HashMap::new();
    for (i, s) in members.iter().enumerate() {
        if let Some(&j) = seen.get(s) {
            return Ok(DistinctnessReport {
                distinct: false,
                collision: Some((j, i)),
            });
        }
        seen.insert(s, i);
    }
    Ok(DistinctnessReport {
        distinct: true,
        collision: None,
    })
}

/// Boundary points of every curve plus interior points from a Halton
/// sequence, `samples` of each.
pub fn sample_points(domain: &DomainSpec, samples: usize) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = domain
        .curves()
        .iter()
        .flat_map(|c| c.samples(samples))
        .collect();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for z in &pts {
        lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    let halton = |mut i: usize, b: usize| {
        let (mut f, mut r) = (1.0, 0.0);
        while i > 0 {
            f /= b as f64;
            r += f * (i % b) as f64;
            i /= b;
        }
        r
    };
    let mut inside = 0;
    for i in 1..=64 * samples.max(1) {
        if inside == samples {
            break;
        }
        let z = Complex64::new(
            lo.re + (hi.re - lo.re) * halton(i, 2),
            lo.im + (hi.im - lo.im) * halton(i, 3),
        );
        if domain.contains(z) {
            pts.push(z);
            inside += 1;
        }
    }
    pts
}

/// `1/q(φ(x)) = φ^m / rev_p(φ)`.
fn inverse_q_at(p: &[Complex64], m: usize, phi: Complex64) -> Complex64 {
    phi.powu(m as u32) / horner(p, phi)
}

fn reversed_complex(p: &IntPoly) -> Vec<Complex64> {
    p.reversed()
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailBound {
    /// Largest `|1/q(φ(x))|` over the samples.
    pub delta: f64,
    pub geometric_ok: bool,
}

pub fn tail_bound_check(
    p: &IntPoly,
    phi: &AnalyticMap,
    domain: &DomainSpec,
    samples: usize,
) -> Result<TailBound, FamilyError> {
    let m = degree_of_monic(p)?;
    let rev = reversed_complex(p);
    let o = domain.center();
    let mut delta = 0.0f64;
    for x in sample_points(domain, samples) {
        let v = phi.eval(x)?;
        if v.norm() == 0.0 && (x - o).norm() > 1e-12 {
            return Err(FamilyError::SampleSingularity(x));
        }
        let u = inverse_q_at(&rev, m, v).norm();
        delta = delta.max(if u.is_finite() { u } else { f64::INFINITY });
    }
    Ok(TailBound {
        delta,
        geometric_ok: delta < 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialSums {
    /// Largest `(|a_n u^n| / B)^{1/n}` over samples and terms.
    pub observed_ratio: f64,
    /// True when every tail `|S_len - S_N|` obeys `B δ^{N+1} / (1 - δ)`.
    pub tails_within_bound: bool,
}

/// Partial sums of `Σ a_n / q(φ(x))^n` at the sample points.
pub fn partial_sums_check(
    p: &IntPoly,
    phi: &AnalyticMap,
    seed: &SeedSequence,
    points: &[Complex64],
    delta: f64,
) -> Result<PartialSums, FamilyError> {
    let m = degree_of_monic(p)?;
    let rev = reversed_complex(p);
    let b = seed.bound.max(1) as f64;
    let len = seed.values.len();
    let mut observed = 0.0f64;
    let mut ok = true;
    for x in points {
        let u = inverse_q_at(&rev, m, phi.eval(*x)?);
        let mut sums = Vec::with_capacity(len + 1);
        let (mut s, mut un) = (Complex64::default(), Complex64::new(1.0, 0.0));
        sums.push(s);
        for n in 1..=len {
            un *= u;
            let a = seed.get(n) as f64;
            s += un * a;
            sums.push(s);
            if a != 0.0 {
                observed = observed.max((un.norm() * a.abs() / b).powf(1.0 / n as f64));
            }
        }
        if delta < 1.0 {
            for (n, sn) in sums.iter().enumerate() {
                let bound = b * delta.powi(n as i32 + 1) / (1.0 - delta);
                ok &= (sums[len] - sn).norm() <= bound * (1.0 + 1e-12) + 1e-300;
            }
        }
    }
    Ok(PartialSums {
        observed_ratio: observed,
        tails_within_bound: ok && delta < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    fn ints(s: &IntSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn inverse_q() {
        assert_eq!(
            ints(&q_inverse_series(&p(&[-2, 1]), 5).unwrap()),
            [0, 1, 2, 4, 8, 16]
        );
        assert_eq!(
            ints(&q_inverse_series(&p(&[1, -3, 1]), 5).unwrap()),
            [0, 0, 1, 3, 8, 21]
        );
        assert_eq!(
            ints(&q_inverse_series(&p(&[0, 1]), 4).unwrap()),
            [0, 1, 0, 0, 0]
        );
        assert_eq!(q_inverse_series(&p(&[1, 2]), 4), Err(FamilyError::NotMonic));
    }

    #[test]
    fn members() {
        let q = p(&[-2, 1]);
        let one = SeedSequence::new(vec![1], 1).unwrap();
        assert_eq!(
            family_member(&q, &one, 6).unwrap(),
            q_inverse_series(&q, 6).unwrap()
        );
        let two = SeedSequence::new(vec![1, 1], 1).unwrap();
        assert_eq!(ints(&family_member(&q, &two, 4).unwrap()), [0, 1, 3, 8, 20]);
        let zero = SeedSequence::new(vec![0; 5], 1).unwrap();
        assert!(family_member(&q, &zero, 6)
            .unwrap()
            .coeffs()
            .iter()
            .all(Zero::is_zero));
        assert_eq!(
            SeedSequence::new(vec![0, 3], 2),
            Err(FamilyError::SeedOutOfBound { index: 1, bound: 2 })
        );
    }

    #[test]
    fn composition() {
        let g = IntSeries::from_i64s(&[0, 1, 2], 6);
        assert_eq!(compose_with_f(&g, &IntSeries::variable(6), 6).unwrap(), g);
        let t2 = IntSeries::from_i64s(&[0, 0, 1], 6);
        assert_eq!(
            ints(&compose_with_f(&g, &t2, 6).unwrap()),
            [0, 0, 1, 0, 2, 0, 0]
        );
        let bad = IntSeries::from_i64s(&[1, 1], 6);
        assert_eq!(
            compose_with_f(&g, &bad, 6),
            Err(FamilyError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn distinctness() {
        let q = p(&[-2, 1]);
        let a = SeedSequence::new(vec![1, 0], 1).unwrap();
        let b = SeedSequence::new(vec![0, 1], 1).unwrap();
        let r = distinctness_check(&q, &[a.clone(), b], 4).unwrap();
        assert!(r.distinct);
        let r = distinctness_check(&q, &[a.clone(), a], 4).unwrap();
        assert_eq!(r.collision, Some((0, 1)));
        let seeds: Vec<SeedSequence> = (0..32)
            .map(|i| SeedSequence::new((0..8).map(|b| (i >> b) & 1).collect(), 1).unwrap())
            .collect();
        assert!(
            distinctness_check(&p(&[1, -3, 1]), &seeds, 16)
                .unwrap()
                .distinct
        );
    }

    #[test]
    fn bit_seeds() {
        assert_eq!(SeedSequence::from_bits(0.625, 4).values(), &[1, 0, 1, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = SeedSequence::random(20, 5, &mut rng);
        assert!(s.values().iter().all(|v| v.abs() <= 5));
    }

    #[test]
    fn tail_bounds() {
        let c0 = Complex64::default();
        let z = AnalyticMap::identity();
        let small = DomainSpec::disk(c0, 0.3).unwrap();
        let t = tail_bound_check(&p(&[-2, 1]), &z, &small, 64).unwrap();
        assert!(t.delta <= 0.75 + 1e-12 && t.geometric_ok);
        let t = tail_bound_check(&p(&[0, 1]), &z, &small, 64).unwrap();
        assert!((t.delta - 0.3).abs() < 1e-12);
        let big = DomainSpec::disk(c0, 2.0).unwrap();
        assert!(
            !tail_bound_check(&p(&[-2, 1]), &z, &big, 64)
                .unwrap()
                .geometric_ok
        );
        let shifted = AnalyticMap::real_polynomial(&[-0.3, 1.0]);
        assert!(matches!(
            tail_bound_check(&p(&[-2, 1]), &shifted, &small, 64),
            Err(FamilyError::SampleSingularity(_))
        ));
    }

    #[test]
    fn partial_sums_converge() {
        let q = p(&[-2, 1]);
        let z = AnalyticMap::identity();
        let d = DomainSpec::disk(Complex64::default(), 0.3).unwrap();
        let t = tail_bound_check(&q, &z, &d, 64).unwrap();
        let pts = sample_points(&d, 25);
        let seed = SeedSequence::new(vec![1; 40], 1).unwrap();
        let r = partial_sums_check(&q, &z, &seed, &pts, t.delta).unwrap();
        assert!(r.observed_ratio <= t.delta + 1e-12);
        assert!(r.tails_within_bound);
    }
}
