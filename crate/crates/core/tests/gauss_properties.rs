use icobr_core::gausscap::achievable::{achievable_sum, closed_form_rate};
use icobr_core::gausscap::bounds::{duplexing_gaps, outer_bounds};
use icobr_core::gausscap::gap::log_space;
use icobr_core::gausscap::regime::{classify_gauss, GaussRegime};
use icobr_core::gausscap::GaussParams;
use proptest::prelude::*;

fn gp(d: f64, c: f64, r: f64) -> GaussParams {
    GaussParams::new(d, c, r).unwrap()
}

fn log_gain() -> impl Strategy<Value = f64> {
    (0.0f64..8.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn achievable_never_exceeds_outer_bound(d in log_gain(), c in log_gain(), r in log_gain()) {
        let p = gp(d, c, r);
        let rep = achievable_sum(&p).unwrap();
        let ob = outer_bounds(&p).applicable(&p);
        prop_assert!(rep.sum_rate <= ob + 1e-9, "{:?}: {} > {}", rep.regime, rep.sum_rate, ob);
        prop_assert!(rep.sum_rate >= 0.0);
        prop_assert!((0.0..=1.0).contains(&rep.beta));
    }

    #[test]
    fn rates_grow_with_the_relay(d in log_gain(), c in log_gain(), r in log_gain(), k in 1.0f64..100.0) {
        let lo = achievable_sum(&gp(d, c, r)).unwrap().sum_rate;
        let hi = achievable_sum(&gp(d, c, r * k)).unwrap().sum_rate;
        prop_assert!(hi >= lo - 1e-9, "{lo} -> {hi}");
    }

    #[test]
    fn classification_is_total_in_the_audit_domain(d in log_gain(), c in log_gain(), r in log_gain()) {
        prop_assert_ne!(classify_gauss(&gp(d, c, r)), GaussRegime::OutOfAuditDomain);
    }
}

#[test]
fn every_closed_form_is_monotone_in_the_relay_gain() {
    let axis = log_space(1.0, 1e8, 25);
    for &d in &axis {
        for &c in &axis {
            let mut prev = f64::NEG_INFINITY;
            let mut prev_regime = None;
            for &r in &log_space(1e-3, 1e9, 200) {
                let p = gp(d, c, r);
                let reg = classify_gauss(&p);
                let v = closed_form_rate(reg, &p).unwrap();
                assert!(v >= prev - 1e-9, "{reg} at ({d},{c},{r}) after {prev_regime:?}");
                prev = v;
                prev_regime = Some(reg);
            }
        }
    }
}

#[test]
fn relay_fresh_message_dominance_on_very_strong_points() {
    let axis = log_space(1.0, 1e8, 30);
    let mut n = 0;
    for &d in &axis {
        for &c in &axis {
            for &r in &axis {
                let rep = achievable_sum(&gp(d, c, r)).unwrap();
                if rep.regime == GaussRegime::VeryStrong {
                    let mac = rep.constraint("rr_sum_relay_mac").unwrap();
                    let dst = rep.constraint("rr_sum_dest_mac").unwrap();
                    assert!(mac >= dst - 1e-12);
                    n += 1;
                }
            }
        }
    }
    assert!(n > 100);
}

#[test]
fn duplexing_examples() {
    for h in log_space(1e-3, 1e8, 500) {
        let g = duplexing_gaps(h);
        assert_eq!(g[0], 0.0);
        assert!(g[1] <= 0.125 && g[3] <= 0.125);
        assert!(g[2] <= 0.25);
        assert!(g.iter().all(|x| *x >= -1e-15));
    }
}

#[test]
fn outer_bounds_at_half_duplex_are_symmetric_in_the_min() {
    let p = gp(4.0, 100.0, 4.0);
    let a = outer_bounds(&p);
    let q = GaussParams::with_alpha(4.0, 100.0, 4.0, 0.5).unwrap();
    assert_eq!(a, outer_bounds(&q));
    // alpha and 1 - alpha give the same first bound.
    let lo = outer_bounds(&GaussParams::with_alpha(4.0, 100.0, 4.0, 0.3).unwrap()).c1;
    let hi = outer_bounds(&GaussParams::with_alpha(4.0, 100.0, 4.0, 0.7).unwrap()).c1;
    assert!((lo - hi).abs() < 1e-15);
}

#[test]
fn extremely_strong_example_from_calculator() {
    // log2(2.5) + log2(4.5)/2, evaluated with an arbitrary-precision library and rounded to f64.
    let rep = achievable_sum(&gp(4.0, 100.0, 4.0)).unwrap();
    assert!((rep.sum_rate - 2.406890595608519).abs() < 1e-12);
}
