//! Variation growth of spherical means along a frequency-localized chirp.
//!
//! Measures S(lambda) = (sum_n |A_{t_{n+1}} f - A_{t_n} f|^q)^{1/q} along the
//! stationary-phase time ladder and fits the log-log growth exponent.

use sphavg::counterexample::{scaling_experiment, ScalingKind};
use sphavg::special::ComplexParam;

fn main() {
    let d = 2;
    let alpha = ComplexParam::real(0.0);
    let q = 3.0;
    let lambdas: Vec<f64> = (8..=11).map(|k| 2.0_f64.powi(k)).collect();

    let report = scaling_experiment(
        ScalingKind::Prop42,
        d,
        alpha,
        q,
        &lambdas,
        0.0,
        20_000_000,
    )
    .unwrap();

    println!("lambda,S,log_lambda,log_S");
    for (l, s) in report.lambdas.iter().zip(&report.s_values) {
        println!("{l},{s:.8e},{:.6},{:.6}", l.ln(), s.ln());
    }
    println!(
        "fitted slope {:.4}, predicted {:.4} (residual {:.3e})",
        report.fitted_slope, report.predicted_slope, report.max_residual
    );
}
