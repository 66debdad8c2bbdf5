use modzeros::certify::{goursat_point, goursat_transform, j_approx, j_approx_error, poly_eval, ChebyshevPoly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chebyshev_round_trip(cs in prop::collection::vec(-1000i64..1000, 1..=17)) {
        let p: Vec<BigRational> = cs.iter().map(|&c| q(c)).collect();
        let t = ChebyshevPoly::from_monomial(&p);
        let mut back = t.to_monomial();
        back.resize(p.len(), BigRational::zero());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn chebyshev_eval_agrees(cs in prop::collection::vec(-100i64..100, 1..=12), n in -50i64..=50) {
        let p: Vec<BigRational> = cs.iter().map(|&c| q(c)).collect();
        let x = rat(n, 50);
        prop_assert_eq!(ChebyshevPoly::from_monomial(&p).eval(&x), poly_eval(&p, &x));
    }

    /// `P~(z) = (1 + z)^d P((1 - z)/(1 + z))`, so the signs of `P~` on
    /// `(0, inf)` are those of `P` on `(-1, 1)`.
    #[test]
    fn goursat_sign_correspondence(cs in prop::collection::vec(-30i64..30, 2..=10), zn in 1i64..400) {
        let p: Vec<BigRational> = cs.iter().map(|&c| q(c)).collect();
        let g = goursat_transform(&p);
        let z = rat(zn, 37);
        let x = goursat_point(&z);
        prop_assert!(x > q(-1) && x < q(1));
        let scale = (BigRational::one() + &z).pow(p.len() as i32 - 1);
        prop_assert_eq!(poly_eval(&g, &z), &scale * poly_eval(&p, &x));
        if g.iter().all(|c| c.is_positive()) {
            prop_assert!(poly_eval(&p, &x).is_positive());
        }
    }

    #[test]
    fn goursat_is_an_involution_up_to_scale(cs in prop::collection::vec(-30i64..30, 1..=10)) {
        let p: Vec<BigRational> = cs.iter().map(|&c| q(c)).collect();
        let twice = goursat_transform(&goursat_transform(&p));
        let s = q(2).pow(p.len() as i32 - 1);
        let want: Vec<BigRational> = p.iter().map(|c| c * &s).collect();
        prop_assert_eq!(twice, want);
    }
}

/// `j = E_4^3 / Delta` from the divisor sum and the product formula in
/// plain complex arithmetic, far past where the truncation matters.
fn j_direct(tau: Complex64) -> Complex64 {
    let qq = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau).exp();
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut prod = Complex64::new(1.0, 0.0);
    for n in 1..200u64 {
        qn *= qq;
        let s3: u64 = (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum();
        e4 += 240.0 * s3 as f64 * qn;
        prod *= Complex64::new(1.0, 0.0) - qn;
    }
    e4.powi(3) / (qq * prod.powi(24))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn j_approx_error_bounds_the_truncation(x in 0.0f64..0.5, which in 0usize..3) {
        let (m, a) = [(5, 0.75), (7, 0.65), (6, 1.9f64.sin())][which];
        let approx = j_approx(m, a, x).unwrap();
        let exact = j_direct(Complex64::new(x, a));
        let bound = j_approx_error(m, a).unwrap();
        prop_assert!((exact - approx.value).norm() <= bound + approx.err + 1e-9 * exact.norm());
    }
}

#[test]
fn printed_error_values() {
    assert!((j_approx_error(5, 0.75).unwrap() - 9.0591).abs() < 1e-3);
    assert!((j_approx_error(7, 0.65).unwrap() - 9.1778).abs() < 1e-3);
    assert!((j_approx_error(6, 1.9f64.sin()).unwrap() - 3.643e-4).abs() < 1e-6);
}
