//! Quadrature building blocks: Gauss-Legendre rules, adaptive refinement,
//! geometrically graded panels for algebraic endpoint weights, and a
//! composite rule for oscillatory integrands sized by total phase variation.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

type NodesWeights = Arc<(Vec<f64>, Vec<f64>)>;

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
pub fn gauss_legendre(n: usize) -> NodesWeights {
    static CACHE: OnceLock<Mutex<HashMap<usize, NodesWeights>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(n)
        .or_insert_with(|| Arc::new(compute_gauss_legendre(n)))
        .clone()
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed-order Gauss-Legendre on [a, b] for a complex-valued integrand.
pub fn integrate_gl<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, n: usize) -> Complex64 {
    let rule = gauss_legendre(n);
    let (nodes, weights) = (&rule.0, &rule.1);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        acc += Complex64::new(*w, 0.0) * f(mid + half * x);
    }
    acc * half
}

/// Adaptive bisection with an embedded GL(15)/GL(31) error estimate.
/// Absolute tolerance; intended for smooth integrands.
pub fn integrate_adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<Complex64> {
    fn rec<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: usize,
    ) -> Result<Complex64> {
        let coarse = integrate_gl(f, a, b, 15);
        let fine = integrate_gl(f, a, b, 31);
        if (fine - coarse).norm() <= tol || b - a < 1e-14 * (a.abs() + b.abs() + 1.0) {
            return Ok(fine);
        }
        if depth > 60 {
            return Err(Error::Resolution(format!(
                "adaptive quadrature failed to converge on [{a}, {b}]"
            )));
        }
        let mid = 0.5 * (a + b);
        Ok(rec(f, a, mid, tol / 2.0, depth + 1)? + rec(f, mid, b, tol / 2.0, depth + 1)?)
    }
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    rec(f, a, b, abs_tol, 0)
}

/// Integrate over [a, b] with geometric grading toward the endpoint `a`,
/// for integrands with an integrable algebraic singularity there.
/// Panels are [a + h/2, a + h], halving toward `a`; the residual stub is
/// dropped once the last panel's contribution is below `abs_tol`.
pub fn integrate_graded_left<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<Complex64> {
    if b <= a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut h = b - a;
    for _ in 0..2000 {
        let lo = a + h / 2.0;
        let hi = a + h;
        let part = integrate_adaptive(f, lo, hi, abs_tol / 4.0)?;
        acc += part;
        h /= 2.0;
        if part.norm() < abs_tol / 4.0 && h < (b - a) * 1e-3 {
            break;
        }
        if h < f64::MIN_POSITIVE * 1e10 {
            break;
        }
    }
    Ok(acc)
}

/// Composite Gauss-Legendre for oscillatory integrands. `total_phase` is an
/// upper bound on the phase variation (radians) over [a, b]; each panel then
/// holds at most half an oscillation, sampled with 8 nodes.
pub fn integrate_oscillatory<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    total_phase: f64,
    node_cap: usize,
) -> Result<Complex64> {
    let cycles = total_phase / (2.0 * std::f64::consts::PI);
    let panels = ((2.0 * cycles).ceil() as usize).max(4);
    const NODES_PER_PANEL: usize = 8;
    if panels.saturating_mul(NODES_PER_PANEL) > node_cap {
        return Err(Error::Resolution(format!(
            "oscillatory quadrature needs {} nodes (cap {node_cap})",
            panels * NODES_PER_PANEL
        )));
    }
    let rule = gauss_legendre(NODES_PER_PANEL);
    let (nodes, weights) = (&rule.0, &rule.1);
    let width = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for (x, w) in nodes.iter().zip(weights) {
            acc += Complex64::new(w * half, 0.0) * f(mid + half * x);
        }
    }
    Ok(acc)
}
