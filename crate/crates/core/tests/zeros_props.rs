use modzeros::miller::{faber_polynomial, miller_form, reconstruct};
use modzeros::zeros::{histogram, star_discrepancy, valence_reconcile, zero_report, HFunction};
use modzeros::FormId;
use proptest::prelude::*;

fn form() -> impl Strategy<Value = FormId> {
    (1i64..=12, 0usize..6, 1i64..4).prop_filter_map("m <= ell", |(ell, i, m)| {
        let kprime = [0, 4, 6, 8, 10, 14][i];
        (m <= ell).then(|| FormId::from_parts(ell, kprime, m).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn valence_always_reconciles(id in form()) {
        let r = zero_report(id).unwrap();
        prop_assert!(r.valence_ok && valence_reconcile(&r), "{:?}", r);
        prop_assert_eq!(r.ord_infty, id.m);
    }

    #[test]
    fn faber_rebuilds_the_series(id in form()) {
        let f = faber_polynomial(id).unwrap();
        prop_assert!(f.is_monic());
        prop_assert_eq!(f.degree(), id.degree());
        let g = miller_form(id, id.ell + 6).unwrap();
        prop_assert_eq!(reconstruct(id, &f, id.ell + 6), g.series);
    }

    #[test]
    fn histogram_counts_every_angle(xs in prop::collection::vec(1.5707963f64..2.0943951, 1..50), bins in 1usize..20) {
        prop_assert_eq!(histogram(&xs, bins).iter().sum::<usize>(), xs.len());
        let d = star_discrepancy(&xs);
        prop_assert!(d >= 0.5 / xs.len() as f64 - 1e-12 && d <= 1.0);
    }
}

#[test]
fn h_is_monotone_iff_k_exceeds_4_pi_m() {
    // h'(theta) = k/2 - 2 pi m sin theta is smallest at theta = pi/2
    for (k, m) in [(12, 1), (24, 2), (48, 1), (124, 1), (240, 2), (240, 20)] {
        let h = HFunction::new(FormId::new(k, m).unwrap());
        assert_eq!(h.is_monotone(), k as f64 > 4.0 * std::f64::consts::PI * m as f64, "{k} {m}");
    }
}
