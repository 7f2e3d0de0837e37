//! Dyadic frequency windows psi_k and the banded multiplier pieces.

use sphavg::fit::least_squares_slope;
use sphavg::means::{banded_multiplier, lp_window};
use sphavg::special::ComplexParam;

fn main() {
    // partition of unity
    let mut worst: f64 = 0.0;
    for i in 0..400 {
        let s = 1e4 * i as f64 / 399.0;
        let sum: f64 = (0..=20).map(|k| lp_window(k, s)).sum();
        worst = worst.max((sum - 1.0).abs());
    }
    println!("partition-of-unity defect over [0, 1e4]: {worst:.3e}");

    println!("window profile:");
    for k in 0..5 {
        let row: Vec<String> = (0..=8)
            .map(|i| format!("{:.3}", lp_window(k, 2.0_f64.powi(i - 1))))
            .collect();
        println!("  psi_{k} at s = 2^-1..2^7: {}", row.join(" "));
    }

    // banded multiplier decay across bands
    let d = 2;
    for alpha in [ComplexParam::real(0.0), ComplexParam::real(0.5)] {
        let mut pts = Vec::new();
        for k in 2..=10 {
            let mut env: f64 = 0.0;
            for i in 0..256 {
                let s = 2.0_f64.powi(k - 1) * (1.0 + 3.0 * i as f64 / 255.0);
                env = env.max(banded_multiplier(d, alpha, k as usize, s).unwrap().norm());
            }
            pts.push(((2.0_f64.powi(k)).ln(), env.ln()));
        }
        let slope = least_squares_slope(&pts);
        println!(
            "banded |m_k| decay, alpha = {}: slope {slope:.4} (predicted {:.4})",
            alpha.re,
            -((d as f64 - 1.0) / 2.0 + alpha.re)
        );
    }
}
