//! Generalized spherical means of radial step functions.
//!
//! Shows the exact ball-average alternation of the step construction, a
//! fractional-order evaluation, and the stability of off-center averages.

use sphavg::counterexample::{alpha1_times, stepfn_alpha1};
use sphavg::means::{ball_average_offcenter, mean_step_at_origin};
use sphavg::special::ComplexParam;

fn main() {
    let d = 2;
    let n = 8;
    let f = stepfn_alpha1(n, d).unwrap();

    println!("ball averages at the origin (exact closed form):");
    for (j, &t) in alpha1_times(n).iter().enumerate() {
        let v = mean_step_at_origin(&f, ComplexParam::real(1.0), t).unwrap();
        println!("  t = 2^{j}: A_t f(0) = {:+.12}", v.re);
    }

    let x = 1.0 / (d as f64 * 2.0_f64.powi(d as i32 + 3));
    println!("perturbed center |x| = {x}:");
    for (j, &t) in alpha1_times(n).iter().enumerate() {
        let v0 = mean_step_at_origin(&f, ComplexParam::real(1.0), t).unwrap();
        let vx = ball_average_offcenter(&f, t, x).unwrap();
        println!(
            "  t = 2^{j}: A_t f(x) = {:+.8}, |A_t f(x) - A_t f(0)| = {:.3e}",
            vx.re,
            (vx - v0).norm()
        );
    }

    println!("fractional order alpha = 1/2 on the same data:");
    let alpha = ComplexParam::real(0.5);
    for (j, &t) in alpha1_times(n).iter().enumerate() {
        let v = mean_step_at_origin(&f, alpha, t).unwrap();
        println!("  t = 2^{j}: A_t^(1/2) f(0) = {:+.8}{:+.8}i", v.re, v.im);
    }
}
