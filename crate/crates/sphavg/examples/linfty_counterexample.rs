//! Unbounded variation ratio of spherical means on bounded data.
//!
//! The alternating step functions keep sup-norm fixed while their sampled
//! q-variation grows like n^{1/q}; both the ball-average case and a
//! fractional-order case are shown.

use sphavg::counterexample::linfty_experiment;
use sphavg::special::ComplexParam;

fn main() {
    let d = 2;
    let q = 3.0;

    println!("alpha = 1 (ball averages), growing ladder:");
    for n in [8, 16, 27] {
        let r = linfty_experiment(n, d, q, ComplexParam::real(1.0)).unwrap();
        println!(
            "  n = {n}: V_q / ||f||_inf = {:.4}, lower bound {:.4}, ok = {}",
            r.ratio,
            r.lower_bound,
            r.passed()
        );
    }

    println!("alpha = 2 at the origin:");
    for n in [5, 7, 9] {
        let r = linfty_experiment(n, d, q, ComplexParam::real(2.0)).unwrap();
        println!(
            "  n = {n}: V_q = {:.4}, lower bound {:.4}, ok = {}",
            r.ratio,
            r.lower_bound,
            r.passed()
        );
    }
}
