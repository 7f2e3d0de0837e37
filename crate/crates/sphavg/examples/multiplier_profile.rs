//! Profile of the spherical-mean multiplier m^alpha(s).
//!
//! Emits the multiplier along a frequency grid for several orders, and fits
//! the large-s envelope decay |m^alpha(s)| ~ s^{-((d-1)/2 + Re alpha)}.

use sphavg::fit::least_squares_slope;
use sphavg::special::{multiplier, ComplexParam};

fn main() {
    let d = 2;
    let orders = [
        ComplexParam::real(0.0),
        ComplexParam::real(0.5),
        ComplexParam::real(1.0),
        ComplexParam::new(0.5, 1.0).unwrap(),
    ];

    println!("alpha_re,alpha_im,s,m_re,m_im");
    for alpha in orders {
        for i in 0..=60 {
            let s = 10.0 * i as f64 / 60.0;
            let m = multiplier(d, alpha, s).unwrap();
            println!("{},{},{s},{:.12e},{:.12e}", alpha.re, alpha.im, m.re, m.im);
        }
    }

    for alpha in orders {
        let mut pts = Vec::new();
        for k in 4..12 {
            let lo = 2.0_f64.powi(k);
            let mut env: f64 = 0.0;
            for i in 0..64 {
                let s = lo + i as f64 / 64.0;
                env = env.max(multiplier(d, alpha, s).unwrap().norm());
            }
            pts.push((lo.ln(), env.ln()));
        }
        let slope = least_squares_slope(&pts);
        let predicted = -((d as f64 - 1.0) / 2.0 + alpha.re);
        eprintln!(
            "alpha = {}+{}i: envelope decay slope {slope:.4} (predicted {predicted:.4})",
            alpha.re, alpha.im
        );
    }
}
