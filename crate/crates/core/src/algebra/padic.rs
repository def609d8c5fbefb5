use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::AlgebraError;

/// Exact p-adic valuation of a nonzero integer.
pub fn vp_integer(n: &BigInt, p: u64) -> Result<u64, AlgebraError> {
    if n.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    check_prime(p)?;
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(n!)` by Legendre's formula `Σ ⌊n / p^i⌋`.
pub fn vp_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut m = n;
    while m > 0 {
        m /= p;
        total += m;
    }
    total
}

/// `v_p` of the multinomial coefficient `n! / (parts[0]! ⋯ parts[k]!)`,
/// without expanding any factorial.
pub fn vp_multinomial(n: u64, parts: &[u64], p: u64) -> Result<u64, AlgebraError> {
    check_prime(p)?;
    let sum: u64 = parts.iter().sum();
    if sum != n {
        return Err(AlgebraError::PartsMismatch { sum, n });
    }
    let below: u64 = parts.iter().map(|&b| vp_factorial(b, p)).sum();
    Ok(vp_factorial(n, p) - below)
}

fn check_prime(p: u64) -> Result<(), AlgebraError> {
    let prime = p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(())
    } else {
        Err(AlgebraError::NotPrime(p))
    }
}

/// Prime factorisation by trial division (the inputs here are products of
/// small denominators).
pub fn factorize(n: &BigInt) -> Vec<(u64, u64)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::from(1) {
        let p: u64 = n.try_into().expect("prime factor beyond u64");
        out.push((p, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_valuations() {
        assert_eq!(vp_integer(&48.into(), 2), Ok(4));
        assert_eq!(vp_integer(&7.into(), 7), Ok(1));
        let ten_fact: BigInt = (1..=10).product::<u64>().into();
        assert_eq!(vp_integer(&ten_fact, 2), Ok(8));
        assert_eq!(vp_integer(&0.into(), 3), Err(AlgebraError::ZeroInput));
        assert_eq!(vp_integer(&5.into(), 4), Err(AlgebraError::NotPrime(4)));
    }

    #[test]
    fn multinomial_valuations() {
        assert_eq!(vp_multinomial(4, &[2, 2], 2), Ok(1));
        assert_eq!(vp_multinomial(9, &[3, 3, 3], 3), Ok(1));
        assert_eq!(vp_multinomial(17, &[17], 5), Ok(0));
        assert_eq!(
            vp_multinomial(5, &[2, 2], 2),
            Err(AlgebraError::PartsMismatch { sum: 4, n: 5 })
        );
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(&360.into()), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(&1.into()), vec![]);
        assert_eq!(factorize(&97.into()), vec![(97, 1)]);
    }
}
