//! q-variation, jump counts and the short/dyadic decomposition of a path.

use num_complex::Complex64;
use sphavg::variation::{
    dyadic_variation, jump_count, short_variation, var_norm, SampledPath,
};

fn main() {
    // a decaying zig-zag sampled on (0, 16]
    let times: Vec<f64> = (1..=64).map(|i| 0.25 * i as f64).collect();
    let values: Vec<Complex64> = times
        .iter()
        .map(|&t| Complex64::new((-0.2 * t).exp() * (3.0 * t).sin(), 0.0))
        .collect();
    let path = SampledPath::new(times, values).unwrap();

    for q in [1.0, 2.0, 3.0, f64::INFINITY] {
        let r = var_norm(&path, q).unwrap();
        println!("V_{q} = {:.6}  (witness length {})", r.value, r.witness.len());
    }

    for delta in [0.1, 0.3, 0.6] {
        let n = jump_count(&path, delta).unwrap();
        println!("jumps exceeding {delta}: {n}");
    }

    let q = 3.0;
    let sv = short_variation(&path, q).unwrap();
    println!("short variation total = {:.6}", sv.total);
    for (j, v) in &sv.per_block {
        println!("  block [2^{j}, 2^{}]: {v:.6}", j + 1);
    }

    let dyadic_times: Vec<f64> = (0..=4).map(|j| 2.0_f64.powi(j)).collect();
    let dyadic_vals = dyadic_times
        .iter()
        .map(|&t| Complex64::new((-0.2 * t).exp() * (3.0 * t).sin(), 0.0))
        .collect();
    let dyadic = SampledPath::new(dyadic_times, dyadic_vals).unwrap();
    println!("dyadic variation = {:.6}", dyadic_variation(&dyadic, q).unwrap());
}
