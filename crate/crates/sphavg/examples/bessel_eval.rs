//! Evaluate complex-order Bessel functions and inspect the regime switch.
//!
//! Prints J_beta(r) for several orders over a log-spaced grid and reports the
//! worst series/asymptotic disagreement inside the overlap window.

use sphavg::special::{bessel, bessel_asymptotic, bessel_series, BesselEvalConfig, ComplexParam};

fn main() {
    let cfg = BesselEvalConfig::default();
    let orders = [
        ComplexParam::real(0.0),
        ComplexParam::real(0.5),
        ComplexParam::real(1.5),
        ComplexParam::new(0.3, 0.7).unwrap(),
    ];

    println!("beta_re,beta_im,r,J_re,J_im");
    for beta in orders {
        for k in 0..12 {
            let r = 0.05 * 2.0_f64.powi(k);
            let v = bessel(beta, r, &cfg).unwrap();
            println!("{},{},{r},{:.12e},{:.12e}", beta.re, beta.im, v.re, v.im);
        }
    }

    let mut worst: f64 = 0.0;
    for beta in orders {
        for i in 0..=20 {
            let r = 15.0 + 0.5 * i as f64;
            let s = bessel_series(beta, r, cfg.series_tol).unwrap();
            let a = bessel_asymptotic(beta, r, cfg.asymptotic_terms).unwrap();
            worst = worst.max((s - a).norm() / (s.norm() + 1e-30));
        }
    }
    eprintln!("worst relative branch disagreement on [15, 25]: {worst:.3e}");
}
