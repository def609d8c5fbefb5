use arithcap::algebra::RatPoly;
use arithcap::integerization::{
    integerizing_exponent, minimal_integerizing_exponent, verify_top_integrality,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

/// Monic, degree 1..=3, denominators from {1, 2, 3, 4, 6}.
fn monic() -> impl Strategy<Value = RatPoly> {
    let coeff = (-9i64..=9, prop::sample::select(vec![1i64, 2, 3, 4, 6]))
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()));
    prop::collection::vec(coeff, 1..=3).prop_map(|mut c| {
        c.push(BigRational::one());
        RatPoly::new(c)
    })
}

/// Exponent vectors `e_1..e_d` with `Σ s·e_s = i`.
fn weighted_compositions(d: usize, i: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return if i == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=i / d {
        for mut rest in weighted_compositions(d - 1, i - e * d) {
            rest.push(e);
            out.push(rest);
        }
    }
    out
}

/// Coefficient of `x^{dM-i}` in `f^M` by the multinomial theorem.
fn top_coeff(f: &RatPoly, m: &BigInt, i: usize) -> BigRational {
    let d = f.degree().unwrap();
    let mut total = BigRational::zero();
    for e in weighted_compositions(d, i) {
        let used: usize = e.iter().sum();
        // M (M-1) … (M-used+1) / ∏ e_s!
        let mut falling = BigInt::one();
        for j in 0..used {
            falling *= m - BigInt::from(j);
        }
        let mut term = BigRational::from_integer(falling);
        for (s, &es) in e.iter().enumerate() {
            let fs = f.coeff(d - (s + 1));
            for k in 1..=es {
                term = term * &fs / BigRational::from_integer(BigInt::from(k));
            }
        }
        total += term;
    }
    total
}

fn top_integral(f: &RatPoly, m: &BigInt, n: usize) -> bool {
    (1..=n).all(|i| top_coeff(f, m, i).is_integer())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn formula_exponent_is_sound(f in monic(), n in 1usize..=4) {
        let r = integerizing_exponent(&f, n).unwrap();
        prop_assert!(r.verified);
        for t in 1u32..=3 {
            let tm = &r.m * BigUint::from(t);
            prop_assert!(top_integral(&f, &BigInt::from(tm.clone()), n));
            let dm = &tm * BigUint::from(f.degree().unwrap());
            if t > 1 && dm >= BigUint::from(n) {
                prop_assert_eq!(verify_top_integrality(&f, &tm, n), Ok(true));
            }
        }
    }

    #[test]
    fn search_exponent_is_minimal(f in monic(), n in 1usize..=3) {
        let formula = integerizing_exponent(&f, n).unwrap().m;
        let cap = formula.to_u64().unwrap_or(u64::MAX).min(4096);
        match minimal_integerizing_exponent(&f, n, cap) {
            Ok(r) => {
                let m = r.m.to_u64().unwrap();
                prop_assert!(top_integral(&f, &BigInt::from(m), n));
                for smaller in 1..m {
                    prop_assert!(!top_integral(&f, &BigInt::from(smaller), n));
                }
                prop_assert!(r.m <= formula);
            }
            Err(_) => {
                // Only possible when the formula exponent lies beyond the cap.
                prop_assert!(formula > BigUint::from(4096u32));
                for m in 1..=cap {
                    prop_assert!(!top_integral(&f, &BigInt::from(m), n));
                }
            }
        }
    }
}

#[test]
fn multinomial_oracle_matches_expansion() {
    let f = arithcap::text::parse_polynomial("x^3 - 1/2*x^2 + 2/3*x - 5/4").unwrap();
    let p = f.pow(7);
    for i in 1..=6 {
        assert_eq!(top_coeff(&f, &BigInt::from(7), i), p.coeff(21 - i));
    }
}
