use num_traits::Zero;
use proptest::prelude::*;
use shortwell_core::lmethod::log_log_slope;
use shortwell_core::models::relations::implicit_series_rational;
use shortwell_core::models::ModelKind;
use shortwell_core::numeric::{rational, BigRational};
use shortwell_core::series::{RationalSeries, TruncatedSeries};
use shortwell_core::summation::{pade, quadratic_pade, radius_estimate, two_point_pade};
use shortwell_core::Error;

fn series(order: usize) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec((-30i64..30, 1i64..12), order + 1)
        .prop_map(|c| TruncatedSeries::new("lambda", c.into_iter().map(|(p, q)| rational(p, q)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pade_reexpands_to_input((s, l, m) in (0usize..5, 0usize..5).prop_flat_map(|(l, m)| (series(l + m), Just(l), Just(m)))) {
        match pade(&s, l, m) {
            Ok(p) => {
                let n = p.l_deg + p.m_deg;
                prop_assert_eq!(p.expand(n).unwrap(), s.with_order(n));
                prop_assert_eq!(p.denominator[0].clone(), rational(1, 1));
            }
            Err(e) => prop_assert_eq!(e, Error::DegeneratePade),
        }
    }

    #[test]
    fn quadratic_residual_vanishes((s, d) in (0usize..3, 0usize..3, 0usize..3)
        .prop_flat_map(|d| (series(d.0 + d.1 + d.2 + 1), Just(d))))
    {
        if let Ok(q) = quadratic_pade(&s, d) {
            prop_assert!(q.residual(&s, d.0 + d.1 + d.2 + 1).is_zero());
            prop_assert!(!(q.p.iter().all(Zero::is_zero) && q.q.iter().all(Zero::is_zero) && q.r.iter().all(Zero::is_zero)));
        }
    }

    #[test]
    fn two_point_leading_slope_is_minus_one(s in series(6), d in 0usize..3, a1 in -3i64..3) {
        let large = [rational(-1, 1), rational(a1, 1)];
        for q in [1usize, 2] {
            let p = 2 * d + 3 - q;
            if let Ok(t) = two_point_pade(&s, &large, p, q) {
                prop_assert_eq!(t.leading_asymptotic(), rational(-1, 1));
            }
        }
    }
}

#[test]
fn quadratic_branch_follows_series() {
    let lams = [1e-3, 2e-3, 5e-3, 1e-2];
    for kind in [ModelKind::Square, ModelKind::Exponential] {
        // residual conditions through order 6, so root - series = O(lambda^7)
        let s = implicit_series_rational(kind, 6, None).unwrap();
        let q = quadratic_pade(&s, (2, 2, 1)).unwrap();
        let gap: Vec<f64> = lams.iter().map(|&l| q.eval(l).unwrap() - s.eval_f64(l)).collect();
        let slope = log_log_slope(&lams, &gap);
        assert!(slope >= 6.9, "{kind}: slope {slope}, {gap:?}");
    }
}

#[test]
fn square_radius_improves_with_more_terms() {
    let target = 0.439_228_839_8;
    let full: TruncatedSeries<BigRational> = implicit_series_rational(ModelKind::Square, 30, None).unwrap();
    let errs: Vec<f64> = (11..=30).map(|n| (radius_estimate(&full.with_order(n)).unwrap().radius - target).abs()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[errs.len() - 1] < 1e-3);
}
