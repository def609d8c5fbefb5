use arithcap::algebra::{vp_integer, vp_multinomial, RatPoly, RatSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn poly(max_len: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(RatPoly::new)
}

fn series(order: usize) -> impl Strategy<Value = RatSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(move |c| RatSeries::new(c, order))
}

/// Series with constant term 0 and linear term 1.
fn tangent_series(order: usize) -> impl Strategy<Value = RatSeries> {
    prop::collection::vec(rational(), order.saturating_sub(1)).prop_map(move |tail| {
        let mut c = vec![BigRational::zero(), BigRational::one()];
        c.extend(tail);
        RatSeries::new(c, order)
    })
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Multiplicity of `p` in `n` by repeated division.
fn valuation_by_division(mut n: BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_ring_laws(a in poly(6), b in poly(6), c in poly(6)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let neg = -&a;
        prop_assert!((&a + &neg).is_zero());
        prop_assert_eq!(&a * &RatPoly::one(), a.clone());
    }

    #[test]
    fn series_ring_laws(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn reciprocal_round_trip(order in 1usize..=16, seed in series(16), c0 in (1i64..=9, 1i64..=9)) {
        let mut coeffs = seed.coeffs()[..=order].to_vec();
        coeffs[0] = BigRational::new(c0.0.into(), c0.1.into());
        let s = RatSeries::new(coeffs, order);
        let inv = s.reciprocal(order).unwrap();
        prop_assert_eq!(&s * &inv, RatSeries::one(order));
        prop_assert_eq!(inv.reciprocal(order).unwrap(), s);
    }

    #[test]
    fn compositional_inverse_round_trip(order in 1usize..=16, f in tangent_series(16), lin in 1i64..=5) {
        let mut coeffs = f.coeffs()[..=order].to_vec();
        coeffs[1] = BigRational::from_integer(lin.into());
        let f = RatSeries::new(coeffs, order);
        let h = f.compositional_inverse(order).unwrap();
        let x = RatSeries::variable(order);
        prop_assert_eq!(f.compose(&h, order).unwrap(), x.clone());
        prop_assert_eq!(h.compose(&f, order).unwrap(), x);
    }

    #[test]
    fn lagrange_inversion(order in 2usize..=8, f in tangent_series(8)) {
        // [X^n] f^{-1} = (1/n) [X^{n-1}] (X/f)^n
        let f = RatSeries::new(f.coeffs()[..=order].to_vec(), order);
        let h = f.compositional_inverse(order).unwrap();
        let f_over_x = RatSeries::new(f.coeffs()[1..].to_vec(), order - 1);
        let x_over_f = f_over_x.reciprocal(order - 1).unwrap();
        for n in 1..=order {
            let want = x_over_f.pow(n as u64).coeff(n - 1) / BigRational::from_integer(n.into());
            prop_assert_eq!(h.coeff(n), want);
        }
    }

    #[test]
    fn power_matches_repeated_products(a in poly(4), s in series(10), n in 0u64..=10) {
        let mut pa = RatPoly::one();
        let mut ps = RatSeries::one(10);
        for _ in 0..n {
            pa = &pa * &a;
            ps = &ps * &s;
        }
        prop_assert_eq!(a.pow(n), pa);
        prop_assert_eq!(s.pow(n), ps);
    }

    #[test]
    fn multinomial_valuations(
        parts in prop::collection::vec(0u64..=20, 1..=4),
        p in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let n: u64 = parts.iter().sum();
        prop_assume!(n <= 60);
        let expanded = parts.iter().fold(factorial(n), |acc, k| acc / factorial(*k));
        let want = valuation_by_division(expanded.clone(), p);
        prop_assert_eq!(vp_multinomial(n, &parts, p).unwrap(), want);
        prop_assert_eq!(vp_integer(&expanded, p).unwrap(), want);
    }
}
