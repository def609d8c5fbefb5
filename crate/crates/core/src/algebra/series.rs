use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Coefficient, Poly};

/// Power series known modulo `X^{order+1}`: exactly `order + 1` stored
/// coefficients. Binary operations keep the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

pub type IntSeries = TruncSeries<BigInt>;
pub type RatSeries = TruncSeries<BigRational>;

fn resized<T: Coefficient>(mut v: Vec<T>, order: usize) -> Vec<T> {
    v.resize(order + 1, T::zero());
    v
}

fn mul_trunc<T: Coefficient>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = out[i + j].clone() + &(x.clone() * y);
        }
    }
    out
}

fn recip_trunc<T: Coefficient>(s: &[T], order: usize) -> Result<Vec<T>, AlgebraError> {
    let inv0 = s
        .first()
        .and_then(Coefficient::try_inverse)
        .ok_or(AlgebraError::NonUnitConstantTerm)?;
    let mut t: Vec<T> = Vec::with_capacity(order + 1);
    t.push(inv0.clone());
    for n in 1..=order {
        let mut acc = T::zero();
        for j in 1..=n.min(s.len() - 1) {
            acc = acc + &(s[j].clone() * &t[n - j]);
        }
        t.push(-(acc * &inv0));
    }
    Ok(t)
}

/// Horner evaluation of `g(f)`; requires `f[0] == 0`.
fn compose_trunc<T: Coefficient>(g: &[T], f: &[T], order: usize) -> Vec<T> {
    let mut acc = vec![T::zero(); order + 1];
    let top = g.len().min(order + 1);
    for i in (0..top).rev() {
        acc = mul_trunc(&acc, f, order);
        acc[0] = acc[0].clone() + &g[i];
    }
    acc
}

impl<T: Coefficient> TruncSeries<T> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients
    /// are stored.
    pub fn new(coeffs: Vec<T>, order: usize) -> Self {
        TruncSeries {
            coeffs: resized(coeffs, order),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![T::one()], order)
    }

    /// The series `T` (identity for composition).
    pub fn variable(order: usize) -> Self {
        Self::new(vec![T::zero(), T::one()], order)
    }

    pub fn from_poly(p: &Poly<T>, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn from_i64s(cs: &[i64], order: usize) -> Self {
        Self::new(cs.iter().map(|&c| T::from_i64(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Index of the first nonzero coefficient, `None` if all stored
    /// coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_integral)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Multiplicative inverse to order `min(order, self.order())`.
    pub fn reciprocal(&self, order: usize) -> Result<Self, AlgebraError> {
        let order = order.min(self.order());
        Ok(TruncSeries {
            coeffs: recip_trunc(&self.coeffs, order)?,
        })
    }

    /// `self ∘ inner`, truncated at `min(order, self.order(), inner.order())`.
    pub fn compose(&self, inner: &Self, order: usize) -> Result<Self, AlgebraError> {
        if !inner.coeffs[0].is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm);
        }
        let order = order.min(self.order()).min(inner.order());
        Ok(TruncSeries {
            coeffs: compose_trunc(&self.coeffs, &inner.coeffs, order),
        })
    }

    /// Compositional inverse by Newton iteration with precision doubling.
    pub fn compositional_inverse(&self, order: usize) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm);
        }
        let lin_inv = self
            .coeffs
            .get(1)
            .and_then(Coefficient::try_inverse)
            .ok_or(AlgebraError::NonInvertibleLinearTerm)?;
        let order = order.min(self.order());
        let deriv: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * &T::from_i64(i as i64))
            .collect();

        let mut h = resized(vec![T::zero(), lin_inv], order);
        let mut prec = 1;
        while prec < order {
            prec = (2 * prec).min(order);
            let hp = resized(h.clone(), prec);
            let mut resid = compose_trunc(&self.coeffs, &hp, prec);
            resid[1] = resid[1].clone() - &T::one();
            let slope = compose_trunc(&deriv, &hp, prec);
            let step = mul_trunc(&resid, &recip_trunc(&slope, prec)?, prec);
            h = resized(
                hp.iter().zip(&step).map(|(a, b)| a.clone() - b).collect(),
                order,
            );
        }
        Ok(TruncSeries { coeffs: h })
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Self {
        let order = self.order();
        let mut base = self.coeffs.clone();
        let mut acc = resized(vec![T::one()], order);
        while n > 0 {
            if n & 1 == 1 {
                acc = mul_trunc(&acc, &base, order);
            }
            n >>= 1;
            if n > 0 {
                base = mul_trunc(&base, &base, order);
            }
        }
        TruncSeries { coeffs: acc }
    }

    /// Power with an arbitrary-size exponent (bits consumed LSB first).
    pub fn pow_big(&self, n: &num_bigint::BigUint) -> Self {
        let order = self.order();
        let mut base = self.coeffs.clone();
        let mut acc = resized(vec![T::one()], order);
        let bits = n.bits();
        for i in 0..bits {
            if n.bit(i) {
                acc = mul_trunc(&acc, &base, order);
            }
            if i + 1 < bits {
                base = mul_trunc(&base, &base, order);
            }
        }
        TruncSeries { coeffs: acc }
    }
}

impl IntSeries {
    pub fn to_rational(&self) -> RatSeries {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl RatSeries {
    pub fn to_integer(&self) -> Option<IntSeries> {
        self.is_integral().then(|| TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.to_integer()).collect(),
        })
    }
}

impl<T: Coefficient> Add for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn add(self, rhs: Self) -> TruncSeries<T> {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl<T: Coefficient> Sub for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn sub(self, rhs: Self) -> TruncSeries<T> {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl<T: Coefficient> Mul for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn mul(self, rhs: Self) -> TruncSeries<T> {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: mul_trunc(&self.coeffs, &rhs.coeffs, order),
        }
    }
}

impl<T: Coefficient> Neg for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn neg(self) -> TruncSeries<T> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// JSON form: `{"coeffs": ["1", "-2", "1/3"], "order": 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub coeffs: Vec<String>,
    pub order: usize,
}

impl<T: Coefficient> TruncSeries<T> {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            order: self.order(),
        }
    }
}

impl<T: Coefficient + std::str::FromStr> TruncSeries<T> {
    pub fn from_json(j: &SeriesJson) -> Result<Self, AlgebraError> {
        if j.coeffs.len() > j.order + 1 {
            return Err(AlgebraError::Malformed(format!(
                "{} coefficients for order {}",
                j.coeffs.len(),
                j.order
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<T>()
                    .map_err(|_| AlgebraError::Malformed(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs, j.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_reciprocal() {
        let s = IntSeries::from_i64s(&[1, -2], 4);
        let t = s.reciprocal(4).unwrap();
        assert_eq!(t, IntSeries::from_i64s(&[1, 2, 4, 8, 16], 4));
        assert_eq!(IntSeries::one(7).reciprocal(7).unwrap(), IntSeries::one(7));
        assert_eq!(
            IntSeries::from_i64s(&[2, 1], 3).reciprocal(3),
            Err(AlgebraError::NonUnitConstantTerm)
        );
        // over Q the same input is invertible
        assert!(IntSeries::from_i64s(&[2, 1], 3)
            .to_rational()
            .reciprocal(3)
            .is_ok());
    }

    #[test]
    fn composition_examples() {
        let g = IntSeries::from_i64s(&[0, 0, 1], 4);
        let f = IntSeries::from_i64s(&[0, 1, 0, 1], 4);
        assert_eq!(
            g.compose(&f, 4).unwrap(),
            IntSeries::from_i64s(&[0, 0, 1, 0, 2], 4)
        );
        let g = IntSeries::from_i64s(&[3, -1, 4, 1, 5], 4);
        assert_eq!(g.compose(&IntSeries::variable(4), 4).unwrap(), g);
        assert_eq!(
            g.compose(&IntSeries::from_i64s(&[1, 1], 4), 4),
            Err(AlgebraError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn reversion_examples() {
        let t = IntSeries::variable(6);
        assert_eq!(t.compositional_inverse(6).unwrap(), t);
        let f = IntSeries::from_i64s(&[0, 1, 1], 4);
        assert_eq!(
            f.compositional_inverse(4).unwrap(),
            IntSeries::from_i64s(&[0, 1, -1, 2, -5], 4)
        );
        assert_eq!(
            IntSeries::from_i64s(&[0, 0, 1], 4).compositional_inverse(4),
            Err(AlgebraError::NonInvertibleLinearTerm)
        );
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = IntSeries::from_i64s(&[1, 1], 3);
        let b = IntSeries::from_i64s(&[1, 1], 5);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let s = RatSeries::new(
            vec![
                BigRational::new(1.into(), 3.into()),
                BigRational::from_integer((-2).into()),
            ],
            3,
        );
        let j = s.to_json();
        assert_eq!(j.coeffs, vec!["1/3", "-2", "0", "0"]);
        assert_eq!(RatSeries::from_json(&j).unwrap(), s);
    }
}
