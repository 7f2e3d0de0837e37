//! Property-based invariants of the variation functionals.

use num_complex::Complex64;
use proptest::prelude::*;

use sphavg::variation::{
    extrema_reduce, jump_count, short_variation, var_inf, var_norm, SampledPath,
};

fn arb_path() -> impl Strategy<Value = SampledPath> {
    let value = (-3.0..3.0_f64, -3.0..3.0_f64);
    (prop::collection::vec(value, 2..20), 0.1..2.0_f64).prop_map(|(vals, t0)| {
        let times: Vec<f64> = (0..vals.len()).map(|i| t0 + 0.37 * i as f64).collect();
        let values: Vec<Complex64> = vals.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        SampledPath::new(times, values).unwrap()
    })
}

fn arb_real_path() -> impl Strategy<Value = SampledPath> {
    (prop::collection::vec(-3.0..3.0_f64, 2..20), 0.1..2.0_f64).prop_map(|(vals, t0)| {
        let times: Vec<f64> = (0..vals.len()).map(|i| t0 + 0.37 * i as f64).collect();
        SampledPath::from_real(times, vals).unwrap()
    })
}

proptest! {
    #[test]
    fn translation_invariance(path in arb_path(), q in 1.0..5.0_f64,
                              cr in -2.0..2.0_f64, ci in -2.0..2.0_f64) {
        let c = Complex64::new(cr, ci);
        let shifted = SampledPath::new(
            path.times().to_vec(),
            path.values().iter().map(|v| v + c).collect(),
        ).unwrap();
        let a = var_norm(&path, q).unwrap().value;
        let b = var_norm(&shifted, q).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
    }

    #[test]
    fn scaling_homogeneity(path in arb_path(), q in 1.0..5.0_f64, k in -2..3_i32) {
        // powers of two scale the samples exactly in floating point
        let c = 2.0_f64.powi(k);
        let scaled = SampledPath::new(
            path.times().to_vec(),
            path.values().iter().map(|v| v * c).collect(),
        ).unwrap();
        let a = var_norm(&path, q).unwrap().value;
        let b = var_norm(&scaled, q).unwrap().value;
        prop_assert!((b - c * a).abs() <= 1e-9 * (1.0 + c * a));
    }

    #[test]
    fn jump_count_scaling_and_monotonicity(path in arb_path(), k in -2..3_i32,
                                           d1 in 0.05..3.0_f64, d2 in 0.05..3.0_f64) {
        let c = 2.0_f64.powi(k);
        let scaled = SampledPath::new(
            path.times().to_vec(),
            path.values().iter().map(|v| v * c).collect(),
        ).unwrap();
        prop_assert_eq!(
            jump_count(&scaled, c * d1).unwrap(),
            jump_count(&path, d1).unwrap()
        );
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(jump_count(&path, lo).unwrap() >= jump_count(&path, hi).unwrap());
    }

    #[test]
    fn time_grid_irrelevance(path in arb_path(), q in 1.0..5.0_f64) {
        let stretched = SampledPath::new(
            path.times().iter().map(|t| 2.0 * t).collect(),
            path.values().to_vec(),
        ).unwrap();
        prop_assert_eq!(
            var_norm(&path, q).unwrap().value,
            var_norm(&stretched, q).unwrap().value
        );
    }

    #[test]
    fn q_monotone_and_jump_lower_bound(path in arb_path(), q1 in 1.0..5.0_f64,
                                       q2 in 1.0..5.0_f64, delta in 0.05..3.0_f64) {
        let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        let vlo = var_norm(&path, lo).unwrap().value;
        let vhi = var_norm(&path, hi).unwrap().value;
        prop_assert!(vhi <= vlo + 1e-12);

        let n = jump_count(&path, delta).unwrap();
        prop_assert!(delta * (n as f64).powf(1.0 / hi) <= vhi + 1e-12);
    }

    #[test]
    fn single_pair_and_total_variation_bounds(path in arb_path(), q in 1.0..5.0_f64) {
        let vq = var_norm(&path, q).unwrap().value;
        prop_assert!(var_inf(&path) <= vq + 1e-12);
        let consecutive: f64 = path.values().windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .sum();
        prop_assert!(var_norm(&path, 1.0).unwrap().value <= consecutive + 1e-9);
    }

    #[test]
    fn reversal_invariance(path in arb_path(), q in 1.0..5.0_f64) {
        let reversed = SampledPath::new(
            path.times().to_vec(),
            path.values().iter().rev().cloned().collect(),
        ).unwrap();
        let a = var_norm(&path, q).unwrap().value;
        let b = var_norm(&reversed, q).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
    }

    #[test]
    fn extrema_reduction_preserves_variation(path in arb_real_path(), q in 1.0..5.0_f64) {
        let reduced = extrema_reduce(&path).unwrap();
        let a = var_norm(&path, q).unwrap().value;
        let b = var_norm(&reduced, q).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
    }

    #[test]
    fn short_variation_bounded_by_full(path in arb_path(), q in 1.0..5.0_f64) {
        // concatenating the per-block optimal chains is one admissible chain
        let sv = short_variation(&path, q).unwrap();
        let vq = var_norm(&path, q).unwrap().value;
        prop_assert!(sv.total <= vq + 1e-9 * (1.0 + vq));
        for v in sv.per_block.values() {
            prop_assert!(*v <= vq + 1e-12);
        }
    }
}
