use icobr_core::detbounds::{det_outer_region, det_sum_capacity, HalfBits};
use icobr_core::detmodel::DetParams;
use icobr_core::detschemes::{
    build_scheme, build_scheme_with, classify_det, run_block, verify_built, DetRegime, ObrSplit,
};
use icobr_core::gf2::LevelVector;
use proptest::prelude::*;

fn random_message(len: usize) -> impl Strategy<Value = LevelVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(LevelVector::from_bools)
}

fn scheme_and_messages() -> impl Strategy<Value = (DetParams, [LevelVector; 4])> {
    (0usize..9, 0usize..12, 0usize..9).prop_flat_map(|(d, c, r)| {
        let p = DetParams::new(d, c, r);
        let s = build_scheme(&p);
        (
            Just(p),
            [
                random_message(s.k1),
                random_message(s.k2),
                random_message(s.k1),
                random_message(s.k2),
            ],
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_messages_decode_exactly((p, [m1, m2, _, _]) in scheme_and_messages()) {
        let s = build_scheme(&p);
        let (d1, d2, _) = run_block(&s, &p, &m1, &m2).unwrap();
        prop_assert_eq!(d1, m1);
        prop_assert_eq!(d2, m2);
    }

    #[test]
    fn pipeline_is_linear((p, [a1, a2, b1, b2]) in scheme_and_messages()) {
        let s = build_scheme(&p);
        let (x1, x2, tx) = run_block(&s, &p, &a1, &a2).unwrap();
        let (y1, y2, ty) = run_block(&s, &p, &b1, &b2).unwrap();
        let (z1, z2, tz) = run_block(&s, &p, &(&a1 ^ &b1), &(&a2 ^ &b2)).unwrap();
        prop_assert_eq!(z1, &x1 ^ &y1);
        prop_assert_eq!(z2, &x2 ^ &y2);
        prop_assert_eq!(tz.relay.y_r, &tx.relay.y_r ^ &ty.relay.y_r);
        prop_assert_eq!(
            tz.destinations[0].y_ic_stage2.clone(),
            &tx.destinations[0].y_ic_stage2 ^ &ty.destinations[0].y_ic_stage2
        );
    }
}

#[test]
fn rates_respect_outer_region() {
    for d in 0..=8 {
        for c in 0..=12 {
            for r in 0..=8 {
                let p = DetParams::new(d, c, r);
                let s = build_scheme(&p);
                let o = det_outer_region(&p);
                let rates = s.rates();
                assert!(rates.sum() <= o.sum_bound, "{p:?}");
                assert!(rates.r1 <= o.individual_bound && rates.r2 <= o.individual_bound, "{p:?}");
            }
        }
    }
}

#[test]
fn corner_points_in_strong_regimes() {
    let mut seen = [false; 3];
    for d in 0..=6 {
        for c in 0..=16 {
            for r in 0..=8 {
                let p = DetParams::new(d, c, r);
                let idx = match classify_det(&p) {
                    DetRegime::ExtremelyStrong => 0,
                    DetRegime::VeryStrong => 1,
                    DetRegime::Strong => 2,
                    _ => continue,
                };
                seen[idx] = true;
                let s = build_scheme_with(&p, ObrSplit::FavorFirst);
                let rep = verify_built(&s);
                assert!(rep.passed(), "{p:?}: {rep:?}");
                assert_eq!(s.rates().r1, det_outer_region(&p).individual_bound, "{p:?}");
            }
        }
    }
    assert_eq!(seen, [true; 3]);
}

#[test]
fn favor_first_split_keeps_capacity_everywhere() {
    for d in 0..=6 {
        for c in 0..=10 {
            for r in 0..=7 {
                let rep = verify_built(&build_scheme_with(&DetParams::new(d, c, r), ObrSplit::FavorFirst));
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }
}

#[test]
fn odd_splits_favour_source_one() {
    // Strong with n_r = 3: two fresh relay bits for source 1, one for source 2.
    let s = build_scheme(&DetParams::new(3, 4, 3));
    assert_eq!(s.regime, DetRegime::Strong);
    assert_eq!((s.k1, s.k2), (6 + 2, 2 + 1));
}

#[test]
fn every_regime_appears_on_the_grid() {
    let mut seen = std::collections::BTreeSet::new();
    for d in 0..=8 {
        for c in 0..=8 {
            for r in 0..=8 {
                seen.insert(classify_det(&DetParams::new(d, c, r)));
            }
        }
    }
    assert_eq!(seen.len(), DetRegime::ALL.len());
}

/// Capacity by brute force from the outer region: the minimum of the bounds
/// that apply, computed without the piecewise formula.
#[test]
fn capacity_matches_outer_region_minimum_on_wide_grid() {
    for d in 0..=12 {
        for c in 0..=30 {
            for r in 0..=24 {
                let p = DetParams::new(d, c, r);
                let o = det_outer_region(&p);
                let m = if c >= d {
                    (o.individual_bound + o.individual_bound).min(o.sum_bound)
                } else {
                    o.sum_bound
                };
                assert_eq!(det_sum_capacity(&p), m, "{p:?}");
            }
        }
    }
}

#[test]
fn w_to_v_transition() {
    // n_r = 0: a dip, a bump, then a dip again (the W).
    let w: Vec<HalfBits> = (0..=6).map(|c| det_sum_capacity(&DetParams::new(6, c, 0))).collect();
    assert_eq!(w[0], HalfBits(24));
    assert_eq!(w[3], HalfBits(12));
    assert_eq!(w[4], HalfBits(16));
    assert_eq!(w[6], HalfBits(12));
    // n_r >= 2 n_d: monotone down to n_c = n_d, monotone up after it.
    for nd in 1..=8 {
        for nr in 2 * nd..=3 * nd {
            let v: Vec<HalfBits> =
                (0..=4 * nd).map(|c| det_sum_capacity(&DetParams::new(nd, c, nr))).collect();
            assert!(v[..=nd].windows(2).all(|x| x[1] <= x[0]), "n_d={nd} n_r={nr}");
            assert!(v[nd..].windows(2).all(|x| x[1] >= x[0]), "n_d={nd} n_r={nr}");
        }
    }
}

#[test]
fn capacity_is_unbounded_in_strong_interference_with_a_growing_relay() {
    let a = det_sum_capacity(&DetParams::new(2, 40, 40));
    let b = det_sum_capacity(&DetParams::new(2, 400, 400));
    assert!(b > a);
    assert_eq!(b, HalfBits(2 * (4 + 400)));
}
