use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use taste_core::bounds::{hs_auxiliary, hs_bounds, reuss, voigt, BoundsConfig, DimensionBounds};

const CFG: BoundsConfig = BoundsConfig {
    epsilon: 0.01,
    d: 3.0,
};

/// Textbook two-phase bracket for phase scores `k1 < k2` in `d` dimensions.
fn classical_two_phase(k1: f64, k2: f64, v1: f64, v2: f64, d: f64) -> (f64, f64) {
    let lower = k1 + v2 / (1.0 / (k2 - k1) + v1 / (d * k1));
    let upper = k2 + v1 / (1.0 / (k1 - k2) + v2 / (d * k2));
    (lower, upper)
}

fn mixture() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..=12).prop_flat_map(|n| {
        (
            prop::collection::vec(0.0f64..100.0, n),
            prop::collection::vec(0.001f64..1.0, n),
        )
            .prop_map(|(t, w)| {
                let s: f64 = w.iter().sum();
                (t, w.into_iter().map(|x| x / s).collect())
            })
    })
}

#[test]
fn two_phase_reference_values() {
    let (lo, hi) = hs_bounds(&[10.0, 30.0], &[0.5, 0.5], &CFG).unwrap();
    assert!((lo - 17.5).abs() < 1e-9);
    assert!((hi - 18.75).abs() < 1e-9);
    assert!((hs_auxiliary(&[10.0, 30.0], &[0.5, 0.5], 10.0, &CFG).unwrap() - 17.5).abs() < 1e-9);
    assert!((hs_auxiliary(&[10.0, 30.0], &[0.5, 0.5], 30.0, &CFG).unwrap() - 18.75).abs() < 1e-9);
    assert!((reuss(&[10.0, 30.0], &[0.5, 0.5], &CFG).unwrap() - 15.0).abs() < 1e-12);
    assert!((voigt(&[10.0, 30.0], &[0.5, 0.5]).unwrap() - 20.0).abs() < 1e-12);
    let (olo, ohi) = classical_two_phase(10.0, 30.0, 0.5, 0.5, 3.0);
    assert!((olo - 17.5).abs() < 1e-12 && (ohi - 18.75).abs() < 1e-12);
}

#[test]
fn n_phase_code_matches_classical_two_phase_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let a: f64 = rng.random_range(1.0..100.0);
        let b: f64 = rng.random_range(1.0..100.0);
        if (a - b).abs() < 1e-3 {
            continue;
        }
        let v1 = rng.random_range(0.01..0.99);
        let d = rng.random_range(1.5..10.0);
        let cfg = BoundsConfig { epsilon: 0.01, d };
        let (lo, hi) = hs_bounds(&[a, b], &[v1, 1.0 - v1], &cfg).unwrap();
        let (k1, k2, w1, w2) = if a < b { (a, b, v1, 1.0 - v1) } else { (b, a, 1.0 - v1, v1) };
        let (olo, ohi) = classical_two_phase(k1, k2, w1, w2, d);
        assert!((lo - olo).abs() < 1e-9, "lower {lo} vs {olo}");
        assert!((hi - ohi).abs() < 1e-9, "upper {hi} vs {ohi}");
    }
}

#[test]
fn homogeneous_mixture_collapses() {
    for c in [0.5f64, 7.0, 42.0] {
        let t = [c; 4];
        let v = [0.1, 0.2, 0.3, 0.4];
        let b = DimensionBounds::compute(&t, &v, &CFG).unwrap();
        for x in [b.reuss, b.voigt, b.hs_lower, b.hs_upper, b.hs_midpoint] {
            assert!((x - c).abs() < 1e-9);
        }
        assert!((hs_auxiliary(&t, &v, 13.0, &CFG).unwrap() - c).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bounds_are_ordered((t, v) in mixture()) {
        let b = DimensionBounds::compute(&t, &v, &CFG).unwrap();
        prop_assert!(b.reuss <= b.hs_lower + 1e-9);
        prop_assert!(b.hs_lower <= b.hs_upper + 1e-9);
        prop_assert!(b.hs_upper <= b.voigt + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bounds_are_permutation_invariant((t, v) in mixture(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut idx: Vec<usize> = (0..t.len()).collect();
        idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let t2: Vec<f64> = idx.iter().map(|&i| t[i]).collect();
        let v2: Vec<f64> = idx.iter().map(|&i| v[i]).collect();
        let a = DimensionBounds::compute(&t, &v, &CFG).unwrap();
        let b = DimensionBounds::compute(&t2, &v2, &CFG).unwrap();
        for (x, y) in [(a.reuss, b.reuss), (a.voigt, b.voigt), (a.hs_lower, b.hs_lower), (a.hs_upper, b.hs_upper)] {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }

    #[test]
    fn merging_identical_phases_keeps_voigt_and_reuss((t, v) in mixture()) {
        let mut t2 = t.clone();
        let mut v2 = v.clone();
        t2.push(t[0]);
        v2[0] = v[0] / 3.0;
        v2.push(v[0] - v2[0]);
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(1.0);
        prop_assert!(close(voigt(&t, &v).unwrap(), voigt(&t2, &v2).unwrap()));
        prop_assert!(close(reuss(&t, &v, &CFG).unwrap(), reuss(&t2, &v2, &CFG).unwrap()));
    }

    #[test]
    fn auxiliary_is_nondecreasing((t, v) in mixture()) {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=50 {
            let a = hs_auxiliary(&t, &v, 2.0 * k as f64, &CFG).unwrap();
            prop_assert!(a >= prev - 1e-9);
            prev = a;
        }
    }

    #[test]
    fn bounds_are_monotone_in_d((t, v) in mixture()) {
        let mut prev = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for d in [1.5, 2.0, 3.0, 5.0, 10.0, 50.0, 200.0] {
            let (lo, hi) = hs_bounds(&t, &v, &BoundsConfig { epsilon: 0.01, d }).unwrap();
            prop_assert!(hi >= prev.1 - 1e-9);
            // the lower bound also rises with d: A is nondecreasing in (d-1) t0
            prop_assert!(lo >= prev.0 - 1e-9);
            prev = (lo, hi);
        }
    }

    #[test]
    fn upper_bound_approaches_voigt_for_large_d((t, v) in mixture()) {
        let (_, hi) = hs_bounds(&t, &v, &BoundsConfig { epsilon: 0.01, d: 1e7 }).unwrap();
        let floored: Vec<f64> = t.iter().map(|x| x.max(0.01)).collect();
        prop_assert!((hi - voigt(&floored, &v).unwrap()).abs() < 0.1);
    }
}
