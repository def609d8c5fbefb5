//! Greedy fractional-part clearing of `f^M`.
//!
//! With `c` the lcm of the denominators of `f` and `g(y) = c^d f(y/c)`
//! (monic, integral), every intermediate polynomial `P` is stored through
//! the integers `B_j = c^{Md-j} P_j`, i.e. as `c^{Md} P(y/c)`. Subtracting
//! `(w / c^{Md-t}) f^q x^r` then becomes the integer update
//! `B ← B - w · g^q · y^r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::PatchError;
use crate::algebra::{denominator_lcm, IntPoly, RatPoly};

/// One subtraction `fraction · f^q · x^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyStep {
    pub q: u64,
    pub r: u64,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub fraction: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub p: IntPoly,
    pub ledger: Vec<GreedyStep>,
}

struct Scaled {
    c: BigInt,
    g: IntPoly,
    d: usize,
}

fn scaled(f: &RatPoly) -> Result<Scaled, PatchError> {
    if !f.is_monic() {
        return Err(PatchError::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Err(PatchError::DegreeTooLow);
    }
    let c = denominator_lcm(f.coeffs());
    let g = IntPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(j, a)| {
                (a * BigRational::from_integer(num_traits::pow(c.clone(), d - j))).to_integer()
            })
            .collect(),
    );
    Ok(Scaled { c, g, d })
}

/// Runs the greedy loop on `f^M` for targets `t = Md - N, …, 0` and returns
/// the monic integer result with the step ledger.
pub fn clear_fractional_parts_with_ledger(
    f: &RatPoly,
    m: u64,
    n: usize,
) -> Result<GreedyOutcome, PatchError> {
    let Scaled { c, g, d } = scaled(f)?;
    let total = m as usize * d;
    if n > total {
        return Err(PatchError::TopCoefficientsNotIntegral);
    }
    let c_pow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * &c))
        .take(total + 1)
        .collect();
    let full = g.pow(m);
    let mut b: Vec<BigInt> = (0..=total).map(|j| full.coeff(j)).collect();
    for t in total - n..total {
        if !b[t].is_multiple_of(&c_pow[total - t]) {
            return Err(PatchError::TopCoefficientsNotIntegral);
        }
    }

    let top = total - n;
    let mut q_cache = (top / d) as u64;
    let mut power = full
        .div_exact(&g.pow(m - q_cache))
        .expect("g^M is divisible by g^(M-q)");
    let mut ledger = Vec::with_capacity(top + 1);
    for t in (0..=top).rev() {
        let (q, r) = ((t / d) as u64, t % d);
        while q_cache > q {
            power = power.div_exact(&g).expect("powers of g divide exactly");
            q_cache -= 1;
        }
        let modulus = &c_pow[total - t];
        let w = b[t].mod_floor(modulus);
        if !w.is_zero() {
            for (i, h) in power.coeffs().iter().enumerate() {
                if !h.is_zero() {
                    b[r + i] -= &w * h;
                }
            }
        }
        debug_assert!(b[t].is_multiple_of(modulus));
        ledger.push(GreedyStep {
            q,
            r: r as u64,
            fraction: BigRational::new(w, modulus.clone()),
        });
    }

    let coeffs = b
        .into_iter()
        .enumerate()
        .map(|(j, bj)| {
            let (quot, rem) = bj.div_rem(&c_pow[total - j]);
            debug_assert!(rem.is_zero());
            quot
        })
        .collect();
    Ok(GreedyOutcome {
        p: IntPoly::new(coeffs),
        ledger,
    })
}

pub fn clear_fractional_parts(f: &RatPoly, m: u64, n: usize) -> Result<IntPoly, PatchError> {
    clear_fractional_parts_with_ledger(f, m, n).map(|o| o.p)
}

/// Exact check of `p + Σ fraction_i · f^{q_i} x^{r_i} = f^M`, done in the
/// scaled integer form and grouped by `q` for a Horner pass in `g`.
pub fn reconstruction_holds(f: &RatPoly, m: u64, outcome: &GreedyOutcome) -> bool {
    let Ok(Scaled { c, g, d }) = scaled(f) else {
        return false;
    };
    let total = m as usize * d;
    if outcome.p.degree() != Some(total) || !outcome.p.is_monic() {
        return false;
    }
    let c_pow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * &c))
        .take(total + 1)
        .collect();
    let mut groups: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for s in &outcome.ledger {
        let t = s.q as usize * d + s.r as usize;
        if t > total {
            return false;
        }
        let w = &s.fraction * BigRational::from_integer(c_pow[total - t].clone());
        if !w.is_integer() {
            return false;
        }
        let row = groups.entry(s.q).or_insert_with(|| vec![BigInt::zero(); d]);
        row[s.r as usize] += w.to_integer();
    }
    let mut acc = IntPoly::zero();
    let top_q = groups.keys().next_back().copied().unwrap_or(0);
    for q in (0..=top_q).rev() {
        acc = &acc * &g;
        if let Some(row) = groups.remove(&q) {
            acc = &acc + &IntPoly::new(row);
        }
    }
    let scaled_p = IntPoly::new(
        (0..=total)
            .map(|j| outcome.p.coeff(j) * &c_pow[total - j])
            .collect(),
    );
    &scaled_p + &acc == g.pow(m)
}

/// How often each `q` occurs in a ledger.
pub fn q_multiplicities(ledger: &[GreedyStep]) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for s in ledger {
        *out.entry(s.q).or_insert(0) += 1;
    }
    out
}

/// With `N = dk`: the top value `M - k` occurs once and every smaller value
/// `0, …, M-k-1` occurs exactly `d` times.
pub fn q_pattern_holds(ledger: &[GreedyStep], d: u64, m: u64, k: u64) -> bool {
    let counts = q_multiplicities(ledger);
    let Some(top) = m.checked_sub(k) else {
        return false;
    };
    counts.len() as u64 == top + 1
        && counts.iter().all(|(&q, &n)| {
            if q == top {
                n == 1
            } else {
                q < top && n as u64 == d
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn poly(s: &str) -> RatPoly {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn micro_example() {
        let f = poly("x^2 - 1/2");
        let out = clear_fractional_parts_with_ledger(&f, 2, 1).unwrap();
        assert_eq!(out.p, IntPoly::from_i64s(&[0, 0, -1, 0, 1]));
        let nonzero: Vec<_> = out
            .ledger
            .iter()
            .filter(|s| !s.fraction.is_zero())
            .collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((nonzero[0].q, nonzero[0].r), (0, 0));
        assert_eq!(nonzero[0].fraction, BigRational::new(1.into(), 4.into()));
        assert!(reconstruction_holds(&f, 2, &out));
    }

    #[test]
    fn integer_input_is_unchanged() {
        let f = poly("x^3 - 2x + 5");
        let out = clear_fractional_parts_with_ledger(&f, 3, 2).unwrap();
        assert_eq!(out.p.to_rational(), f.pow(3));
        assert!(out.ledger.iter().all(|s| s.fraction.is_zero()));
    }

    #[test]
    fn rejects_fractional_top() {
        let f = poly("x + 1/2");
        assert_eq!(
            clear_fractional_parts(&f, 4, 2),
            Err(PatchError::TopCoefficientsNotIntegral)
        );
        assert!(clear_fractional_parts(&f, 8, 2).is_ok());
    }

    #[test]
    fn negative_coefficients_round_down() {
        let f = poly("x - 1/3");
        let out = clear_fractional_parts_with_ledger(&f, 3, 1).unwrap();
        assert!(out.p.is_monic() && out.p.degree() == Some(3));
        assert!(out
            .ledger
            .iter()
            .all(|s| s.fraction >= BigRational::zero() && s.fraction < BigRational::one()));
        assert!(reconstruction_holds(&f, 3, &out));
    }

    #[test]
    fn tampered_ledger_fails_reconstruction() {
        let f = poly("x^2 - 1/2");
        let mut out = clear_fractional_parts_with_ledger(&f, 2, 1).unwrap();
        let last = out.ledger.len() - 1;
        out.ledger[last].fraction = BigRational::new(1.into(), 2.into());
        assert!(!reconstruction_holds(&f, 2, &out));
    }

    #[test]
    fn q_pattern_for_dk() {
        // d = 2, k = 3, N = 6, M = 64: targets 122 down to 0.
        let f = poly("x^2 - x + 1/4");
        let out = clear_fractional_parts_with_ledger(&f, 64, 6).unwrap();
        assert!(q_pattern_holds(&out.ledger, 2, 64, 3));
        assert!(!q_pattern_holds(&out.ledger, 2, 64, 2));
        let counts = q_multiplicities(&out.ledger);
        assert_eq!(counts[&61], 1);
        assert_eq!(counts[&0], 2);
        assert!(reconstruction_holds(&f, 64, &out));
    }
}
