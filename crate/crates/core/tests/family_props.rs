use arithcap::algebra::{IntPoly, RatSeries};
use arithcap::family::{family_member, q_inverse_series, SeedSequence};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Monic integer polynomial of degree 1..=3.
fn monic() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-4i64..=4, 1..=3).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64s(&c)
    })
}

fn seed(len: usize) -> impl Strategy<Value = SeedSequence> {
    prop::collection::vec(-3i64..=3, len).prop_map(|v| SeedSequence::new(v, 3).unwrap())
}

/// `Σ a_n u^n` over ℚ with `u = X^m / rev(p)` computed by rational division.
fn rational_member(p: &IntPoly, s: &SeedSequence, d: usize) -> RatSeries {
    let m = p.degree().unwrap();
    let rev = RatSeries::new(p.reversed().to_rational().into_coeffs(), d);
    let mut shifted = vec![BigRational::zero(); m];
    shifted.push(BigRational::one());
    let u = &RatSeries::new(shifted, d) * &rev.reciprocal(d).unwrap();
    let mut acc = RatSeries::zero(d);
    for (n, a) in s.values().iter().enumerate() {
        if (n + 1) * m > d {
            break;
        }
        acc = &acc
            + &u.pow(n as u64 + 1)
                .scale(&BigRational::from_integer(BigInt::from(*a)));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn members_are_integral_and_match_rational_sum(p in monic(), s in seed(12)) {
        let d = 16 * p.degree().unwrap();
        let member = family_member(&p, &s, d).unwrap();
        prop_assert_eq!(member.to_rational(), rational_member(&p, &s, d));
    }

    #[test]
    fn powers_of_inverse_start_at_mn(p in monic()) {
        let m = p.degree().unwrap();
        let d = 16 * m;
        let u = q_inverse_series(&p, d).unwrap();
        for n in 1..=d / m {
            let un = u.pow(n as u64);
            prop_assert_eq!(un.valuation(), Some(m * n));
            prop_assert_eq!(un.coeff(m * n), BigInt::one());
        }
    }

    #[test]
    fn linear_in_the_seed(p in monic(), a in seed(10), b in seed(10)) {
        let d = 12 * p.degree().unwrap();
        let sum = family_member(&p, &a.add(&b), d).unwrap();
        let parts = &family_member(&p, &a, d).unwrap() + &family_member(&p, &b, d).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn early_differences_survive_truncation(p in monic(), a in seed(8), at in 0usize..8, bump in 1i64..=3) {
        let m = p.degree().unwrap();
        let d = 8 * m;
        let mut v = a.values().to_vec();
        v[at] = if v[at] + bump <= 3 { v[at] + bump } else { v[at] - bump };
        let b = SeedSequence::new(v, 3).unwrap();
        let (fa, fb) = (family_member(&p, &a, d).unwrap(), family_member(&p, &b, d).unwrap());
        prop_assert_ne!(&fa, &fb);
        // The first difference appears exactly at X^{m(at+1)}.
        let first = (0..=d).find(|&i| fa.coeff(i) != fb.coeff(i));
        prop_assert_eq!(first, Some(m * (at + 1)));
    }
}
