use modzeros::qseries::{delta, eisenstein, jfunction, QSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn series() -> impl Strategy<Value = QSeries> {
    (-1i64..3, prop::collection::vec((-50i64..50, 1i64..6), 1..10), 0i64..4).prop_map(|(lead, cs, extra)| {
        let coeffs: Vec<BigRational> = cs.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        let trunc = lead + coeffs.len() as i64 - 1 + extra;
        let mut coeffs = coeffs;
        coeffs.resize((trunc - lead + 1) as usize, BigRational::from_integer(0.into()));
        QSeries::new(lead, coeffs, trunc)
    })
}

fn unit_series() -> impl Strategy<Value = QSeries> {
    (prop::collection::vec(-20i64..20, 1..10), 1i64..5).prop_map(|(cs, c0)| {
        let mut coeffs: Vec<BigRational> = vec![BigRational::from_integer(c0.into())];
        coeffs.extend(cs.iter().map(|&n| BigRational::from_integer(n.into())));
        let trunc = coeffs.len() as i64 - 1;
        QSeries::new(0, coeffs, trunc)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes(a in series(), b in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn mul_associates(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mul_distributes(a in series(), b in series(), c in series()) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs.trunc(), rhs.trunc());
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn recip_inverts(a in unit_series()) {
        let inv = a.recip().unwrap();
        let one = &a * &inv;
        prop_assert_eq!(one.trunc(), a.trunc());
        prop_assert!((&one - &QSeries::one(a.trunc())).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation(a in series(), b in series()) {
        let lhs = (&a * &b).q_derivative();
        let rhs = &(&a.q_derivative() * &b) + &(&a * &b.q_derivative());
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn json_round_trip(a in series()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: QSeries = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn weight_products(n in 4i64..40) {
        let e = |k| eisenstein(k, n).unwrap();
        prop_assert_eq!(e(8), &e(4) * &e(4));
        prop_assert_eq!(e(10), &e(4) * &e(6));
        prop_assert!((&delta(n).scale(&BigRational::from_integer(1728.into())) - &(&e(4).pow(3) - &e(6).pow(2))).is_zero());
    }
}

/// `sigma_3` and `tau(n)` from the definitions, as an independent oracle.
fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

#[test]
fn known_coefficients() {
    let e4 = eisenstein(4, 12).unwrap();
    for n in 1..=12u64 {
        assert_eq!(e4.coeff(n as i64), Some(BigRational::from_integer(240 * sigma(3, n))));
    }
    let tau = [1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
    let d = delta(12);
    for (i, &t) in tau.iter().enumerate() {
        assert_eq!(d.coeff(i as i64 + 1), Some(BigRational::from_integer(t.into())));
    }
    let j = jfunction(3);
    let want = ["1", "744", "196884", "21493760", "864299970"];
    for (i, w) in want.iter().enumerate() {
        assert_eq!(j.coeff(i as i64 - 1), Some(BigRational::from_integer(w.parse().unwrap())));
    }
}
