use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient ring used by [`Poly`](super::Poly) and
/// [`TruncSeries`](super::TruncSeries).
///
/// Implemented for `BigInt` (the ring ℤ) and `BigRational` (the field ℚ).
/// `try_inverse` is what separates the two: over ℤ only ±1 are units.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + for<'a> std::ops::Add<&'a Self, Output = Self>
    + for<'a> std::ops::Sub<&'a Self, Output = Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + Send
    + Sync
{
    fn try_inverse(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    fn is_integral(&self) -> bool;
    fn approx_f64(&self) -> f64;
    fn abs_value(&self) -> Self;
}

impl Coefficient for BigInt {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn is_integral(&self) -> bool {
        true
    }

    fn approx_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }
}

impl Coefficient for BigRational {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn approx_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }
}

/// Converts a rational to the nearest-ish `f64` without overflowing on huge
/// numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Natural log of |n| for an arbitrarily large integer.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits() as i64;
    let shift = (bits - 62).max(0);
    let top = (n.abs() >> shift as usize).to_f64().unwrap_or(1.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fractional part in `[0, 1)`, so that `a - frac(a) == floor(a)` also for
/// negative rationals.
pub fn fractional_part(a: &BigRational) -> BigRational {
    let (n, d) = (a.numer(), a.denom());
    BigRational::new(n.mod_floor(d), d.clone())
}

/// Least common multiple of the denominators of a list of rationals.
pub fn denominator_lcm<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Exact rational from an `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}
