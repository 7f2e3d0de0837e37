//! Quantitative counterexample constructions: frequency-localized chirps and
//! their scaling laws along stationary-phase time sequences, and the radial
//! step functions exhibiting L^infinity unboundedness of the variation.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fit;
use crate::means::{
    ball_average_offcenter, mean_radial_freq, mean_step_at_origin, smooth_transition,
    FreqQuadConfig, RadialProfile, RadialStep,
};
use crate::special::{ball_volume, gamma, sphere_area, ComplexParam};
use crate::variation::{var_norm, SampledPath};

/// Smooth bump: 1 on [3/4, 5/4], supported in [1/2, 3/2].
pub fn bump(u: f64) -> f64 {
    smooth_transition((u - 0.5) * 4.0) * smooth_transition((1.5 - u) * 4.0)
}

/// Frequency-localized quadratic-phase test function, described through its
/// radial frequency profile `chi(rho/lambda) rho^{i Im alpha} e^{i pi rho^2/lambda}`.
#[derive(Debug, Clone, Copy)]
pub struct ChirpSpec {
    pub lambda: f64,
    pub alpha: ComplexParam,
    pub d: usize,
}

impl ChirpSpec {
    pub fn new(lambda: f64, alpha: ComplexParam, d: usize) -> Result<Self> {
        if !(lambda >= 64.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "ChirpSpec: lambda must be >= 64, got {lambda}"
            )));
        }
        if d < 2 {
            return Err(Error::Domain("ChirpSpec: d must be >= 2".into()));
        }
        Ok(Self { lambda, alpha, d })
    }
}

/// The radial frequency profile of the chirp at `|xi| = rho`.
pub fn chirp_hat(spec: &ChirpSpec, rho: f64) -> Complex64 {
    let amp = bump(rho / spec.lambda);
    if amp == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let phase = PI * rho * rho / spec.lambda + spec.alpha.im * rho.ln();
    Complex64::from_polar(amp, phase)
}

/// The chirp as a `RadialProfile` for the frequency-side mean evaluators.
pub fn chirp_profile(spec: &ChirpSpec) -> RadialProfile {
    let s = *spec;
    // phase rate: 2 pi rho / lambda <= 3 pi on the support, plus the
    // logarithmic factor's |Im alpha| / rho <= 2 |Im alpha| / lambda
    let rate = 3.0 * PI + 2.0 * s.alpha.im.abs() / s.lambda;
    RadialProfile::new(
        Box::new(move |rho| chirp_hat(&s, rho)),
        s.lambda / 2.0,
        1.5 * s.lambda,
        s.d,
        rate,
    )
    .expect("chirp support is always valid")
}

/// Spatial value of the chirp at radius `r`:
/// `f(x) = int fhat(rho) theta(rho |x|) rho^{d-1} d rho`.
fn chirp_spatial(spec: &ChirpSpec, r: f64, node_cap: usize) -> Result<Complex64> {
    let bcfg = crate::special::BesselEvalConfig::default();
    let d = spec.d;
    let rate = 3.0 * PI + 2.0 * spec.alpha.im.abs() / spec.lambda + 2.0 * PI * r;
    let total_phase = rate * spec.lambda;
    crate::quad::integrate_oscillatory(
        &|rho: f64| {
            let v = chirp_hat(spec, rho);
            if v.norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let th = crate::special::sphere_fourier_cfg(d, rho * r, &bcfg)
                .unwrap_or(Complex64::new(f64::NAN, 0.0));
            v * th * Complex64::new(rho.powi(d as i32 - 1), 0.0)
        },
        spec.lambda / 2.0,
        1.5 * spec.lambda,
        total_phase,
        node_cap,
    )
}

/// Spatial L^p norm of the chirp, by inverse radial transform on a dense
/// radial grid over |x| <= 4 (the stationary-phase support is |x| in
/// [1/2, 3/2], so the truncated tail is negligible at the fitted scale).
/// Only d = 2 is supported.
pub fn chirp_lp_norm(spec: &ChirpSpec, p: f64) -> Result<f64> {
    chirp_lp_norms(spec, &[p]).map(|v| v[0])
}

/// Same as `chirp_lp_norm` for several exponents at once, sharing the
/// expensive spatial-grid evaluation.
pub fn chirp_lp_norms(spec: &ChirpSpec, ps: &[f64]) -> Result<Vec<f64>> {
    if spec.d != 2 {
        return Err(Error::Precondition("chirp_lp_norm: only d = 2 is supported".into()));
    }
    if ps.iter().any(|&p| !(p >= 1.0)) {
        return Err(Error::Domain("chirp_lp_norm: p must be >= 1".into()));
    }
    let r_max = 4.0;
    let nr = 1601usize;
    let h = r_max / (nr - 1) as f64;
    let cap = FreqQuadConfig::default().node_cap;
    let moduli: Vec<f64> = (0..nr)
        .into_par_iter()
        .map(|i| chirp_spatial(spec, i as f64 * h, cap).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?;
    let sigma = sphere_area(spec.d);
    Ok(ps
        .iter()
        .map(|&p| {
            // trapezoid of sigma * |f(r)|^p r^{d-1} dr
            let mut acc = 0.0;
            for (i, &m) in moduli.iter().enumerate() {
                let r = i as f64 * h;
                let w = if i == 0 || i == nr - 1 { 0.5 } else { 1.0 };
                acc += w * m.powf(p) * r.powi(spec.d as i32 - 1);
            }
            (sigma * acc * h).powf(1.0 / p)
        })
        .collect())
}

/// Frequency-side L^2 norm of the chirp (exact up to 1-D quadrature),
/// `(sigma int chi(rho/lambda)^2 rho^{d-1} d rho)^{1/2}`; equals the spatial
/// L^2 norm by Plancherel.
pub fn chirp_l2_freq(spec: &ChirpSpec) -> Result<f64> {
    let s = *spec;
    let v = crate::quad::integrate_adaptive(
        &|rho: f64| {
            let a = bump(rho / s.lambda);
            Complex64::new(a * a * rho.powi(s.d as i32 - 1), 0.0)
        },
        s.lambda / 2.0,
        1.5 * s.lambda,
        1e-9 * s.lambda.powi(s.d as i32),
    )?;
    Ok((sphere_area(s.d) * v.re).sqrt())
}

/// Stationary-phase time sequence `t_n = sqrt(1 + n/lambda)` for the origin
/// experiment. Admissible range `1 <= n <= lambda/100`.
pub fn tn_prop42(lambda: f64, n: usize) -> Result<f64> {
    if n < 1 || (n as f64) > lambda / 100.0 {
        return Err(Error::Precondition(format!(
            "tn_prop42: need 1 <= n <= lambda/100 = {}, got {n}",
            lambda / 100.0
        )));
    }
    Ok((1.0 + n as f64 / lambda).sqrt())
}

/// Time sequence `t_n = x_norm - sqrt(9/16 + n/lambda)` for the off-center
/// experiment; requires `x_norm in [11/4, 3]` and `1 <= n <= lambda/1000`,
/// which pins the output inside [19/10, 9/4].
pub fn tn_prop43(lambda: f64, x_norm: f64, n: usize) -> Result<f64> {
    if !(2.75..=3.0).contains(&x_norm) {
        return Err(Error::Precondition(format!(
            "tn_prop43: x_norm must lie in [11/4, 3], got {x_norm}"
        )));
    }
    if n < 1 || (n as f64) > lambda / 1000.0 {
        return Err(Error::Precondition(format!(
            "tn_prop43: need 1 <= n <= lambda/1000 = {}, got {n}",
            lambda / 1000.0
        )));
    }
    Ok(x_norm - (9.0 / 16.0 + n as f64 / lambda).sqrt())
}

/// Alternating radial step function for the ball-average (alpha = 1)
/// unboundedness experiment: `f_n = chi_{[0,1)}/m(B(0,1)) + sum_j c_j
/// chi_{[2^{j-1}, 2^j)}` with coefficients chosen so the ball averages at
/// t = 2^j vanish for odd j and exceed 1/2 for even j.
pub fn stepfn_alpha1(n: usize, d: usize) -> Result<RadialStep> {
    if n < 2 {
        return Err(Error::Domain("stepfn_alpha1: n must be >= 2".into()));
    }
    let vb = ball_volume(d);
    let pd = 2.0_f64.powi(d as i32);
    let mut breakpoints = vec![0.0];
    let mut coeffs = vec![Complex64::new(1.0 / vb, 0.0)];
    for j in 1..=n {
        breakpoints.push(2.0_f64.powi(j as i32 - 1));
        let c = if j == 1 {
            -1.0 / ((pd - 1.0) * vb)
        } else if j % 2 == 0 {
            1.0 / vb
        } else {
            -1.0 / (pd * vb)
        };
        coeffs.push(Complex64::new(c, 0.0));
    }
    breakpoints.push(2.0_f64.powi(n as i32));
    RadialStep::new(breakpoints, coeffs, d)
}

/// Evaluation times `t_j = 2^j`, j = 0..n, for `stepfn_alpha1`.
pub fn alpha1_times(n: usize) -> Vec<f64> {
    (0..=n).map(|j| 2.0_f64.powi(j as i32)).collect()
}

/// Alternating step function for general complex order with `Re alpha > 0`,
/// `alpha != 1`, together with its evaluation times `t_j = 2^{4j} c^j` where
/// `c = max(|alpha - 1|, 1)`. The j-th step occupies
/// `[2^{4(j-1)} c^{j-1}, 2^{4(j-1)+1} c^{j-1})`; gaps carry coefficient 0.
pub fn stepfn_general(
    n: usize,
    d: usize,
    alpha: ComplexParam,
) -> Result<(RadialStep, Vec<f64>)> {
    if !(alpha.re > 0.0) {
        return Err(Error::Domain("stepfn_general: Re alpha must be > 0".into()));
    }
    let dist = ((alpha.re - 1.0) * (alpha.re - 1.0) + alpha.im * alpha.im).sqrt();
    if dist == 0.0 {
        return Err(Error::Domain("stepfn_general: alpha = 1 is excluded".into()));
    }
    if n < 1 {
        return Err(Error::Domain("stepfn_general: n must be >= 1".into()));
    }
    let c = dist.max(1.0);
    let df = d as f64;
    let g = gamma(alpha.as_complex());
    let sigma = sphere_area(d);
    let base = df * g / ((2.0_f64.powi(d as i32) - 1.0) * sigma);
    let odd_coeff = base * 2.0_f64.powi(4 * d as i32) * c.powi(d as i32);
    let even_coeff = -base;
    let mut breakpoints = vec![0.0];
    let mut coeffs = Vec::new();
    let mut times = Vec::with_capacity(n);
    for j in 1..=n {
        let lo = 2.0_f64.powi(4 * (j as i32 - 1)) * c.powi(j as i32 - 1);
        let hi = 2.0 * lo;
        // gap since the previous step (first gap is [0, 1))
        coeffs.push(Complex64::new(0.0, 0.0));
        breakpoints.push(lo);
        coeffs.push(if j % 2 == 1 { odd_coeff } else { even_coeff });
        breakpoints.push(hi);
        times.push(2.0_f64.powi(4 * j as i32) * c.powi(j as i32));
    }
    let f = RadialStep::new(breakpoints, coeffs, d)?;
    Ok((f, times))
}

/// Which stationary-phase sequence a scaling experiment follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingKind {
    /// Origin evaluation, `t_n = sqrt(1 + n/lambda)`.
    Prop42,
    /// Off-center evaluation, `t_n = x_norm - sqrt(9/16 + n/lambda)`.
    Prop43,
}

/// Log-log scaling record for the chirp variation sums.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScalingReport {
    pub kind_label: String,
    pub lambdas: Vec<f64>,
    pub s_values: Vec<f64>,
    pub fitted_slope: f64,
    pub predicted_slope: f64,
    pub max_residual: f64,
}

impl ScalingReport {
    pub fn passed(&self, tol: f64) -> bool {
        (self.fitted_slope - self.predicted_slope).abs() <= tol
    }
}

/// Runs the chirp scaling experiment: for each lambda forms
/// `S(lambda) = (sum_{1 <= n <= lambda/100} |A_{t_{n+1}} - A_{t_n}|^q)^{1/q}`
/// with the kind's time sequence and fits the log-log slope against the
/// predicted exponent (`d/2 - Re alpha + 1/q`, resp. `1/2 - Re alpha + 1/q`).
pub fn scaling_experiment(
    kind: ScalingKind,
    d: usize,
    alpha: ComplexParam,
    q: f64,
    lambdas: &[f64],
    x_norm: f64,
    node_cap: usize,
) -> Result<ScalingReport> {
    if lambdas.len() < 4 {
        return Err(Error::Config("scaling_experiment: need at least 4 lambdas".into()));
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    if !(q >= 1.0) {
        return Err(Error::Domain("scaling_experiment: q must be >= 1".into()));
    }
    if kind == ScalingKind::Prop43 && !(2.75..=3.0).contains(&x_norm) {
        return Err(Error::Config(
            "scaling_experiment: prop43 requires x_norm in [11/4, 3]".into(),
        ));
    }
    let eval_x = match kind {
        ScalingKind::Prop42 => 0.0,
        ScalingKind::Prop43 => x_norm,
    };
    let cfg = FreqQuadConfig { node_cap };
    let s_values: Vec<f64> = sorted
        .par_iter()
        .map(|&lambda| -> Result<f64> {
            let spec = ChirpSpec::new(lambda, alpha, d)?;
            let profile = chirp_profile(&spec);
            let n_max = (lambda / 100.0).floor() as usize;
            if n_max < 2 {
                return Err(Error::Config(format!(
                    "scaling_experiment: lambda = {lambda} leaves no time samples"
                )));
            }
            // times t_1 .. t_{n_max + 1}, formulas applied directly so the
            // final difference has both endpoints
            let times: Vec<f64> = (1..=n_max + 1)
                .map(|n| match kind {
                    ScalingKind::Prop42 => (1.0 + n as f64 / lambda).sqrt(),
                    ScalingKind::Prop43 => x_norm - (9.0 / 16.0 + n as f64 / lambda).sqrt(),
                })
                .collect();
            let vals: Vec<Complex64> = times
                .par_iter()
                .map(|&t| mean_radial_freq(&profile, alpha, d, t, eval_x, &cfg))
                .collect::<Result<Vec<_>>>()?;
            let mut acc = 0.0;
            for w in vals.windows(2) {
                acc += (w[1] - w[0]).norm().powf(q);
            }
            Ok(acc.powf(1.0 / q))
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = sorted
        .iter()
        .zip(&s_values)
        .map(|(&l, &s)| (l.ln(), s.ln()))
        .collect();
    if s_values.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::Resolution("scaling_experiment: degenerate S value".into()));
    }
    let (fitted_slope, _, max_residual) = fit::least_squares(&points);
    let predicted_slope = match kind {
        ScalingKind::Prop42 => d as f64 / 2.0 - alpha.re + 1.0 / q,
        ScalingKind::Prop43 => 0.5 - alpha.re + 1.0 / q,
    };
    Ok(ScalingReport {
        kind_label: match kind {
            ScalingKind::Prop42 => "prop42".into(),
            ScalingKind::Prop43 => "prop43".into(),
        },
        lambdas: sorted,
        s_values,
        fitted_slope,
        predicted_slope,
        max_residual,
    })
}

/// Result of the L^infinity unboundedness experiment.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LinftyReport {
    /// Claimed lower bound: `n^{1/q} m(B(0,1)) / 4` for alpha = 1 (on the
    /// normalized ratio), `(n-1)^{1/q} / 4` otherwise (on the raw variation).
    pub lower_bound: f64,
    /// Measured quantity: `V_q / sup|f_n|` for alpha = 1, `V_q` at the origin
    /// otherwise.
    pub ratio: f64,
}

impl LinftyReport {
    pub fn passed(&self) -> bool {
        self.ratio >= self.lower_bound
    }
}

/// Builds the alternating step function for the given order, samples the
/// spherical means along its time ladder, and compares the sampled
/// q-variation with the growing lower bound. For alpha = 1 the means are
/// taken at an off-center point with `|x| = 1/(d 2^{d+3})`; for general
/// alpha at the origin.
pub fn linfty_experiment(n: usize, d: usize, q: f64, alpha: ComplexParam) -> Result<LinftyReport> {
    if !(q >= 1.0) {
        return Err(Error::Domain("linfty_experiment: q must be >= 1".into()));
    }
    if alpha.re == 1.0 && alpha.im == 0.0 {
        let f = stepfn_alpha1(n, d)?;
        let times = alpha1_times(n);
        let x = 1.0 / (d as f64 * 2.0_f64.powi(d as i32 + 3));
        let vals = times
            .par_iter()
            .map(|&t| ball_average_offcenter(&f, t, x))
            .collect::<Result<Vec<_>>>()?;
        let path = SampledPath::new(times, vals)?;
        let vq = var_norm(&path, q)?.value;
        let ratio = vq / f.sup_norm();
        let lower_bound = (n as f64).powf(1.0 / q) * ball_volume(d) / 4.0;
        Ok(LinftyReport { lower_bound, ratio })
    } else {
        let (f, times) = stepfn_general(n, d, alpha)?;
        let vals = times
            .par_iter()
            .map(|&t| mean_step_at_origin(&f, alpha, t))
            .collect::<Result<Vec<_>>>()?;
        let path = SampledPath::new(times, vals)?;
        let vq = var_norm(&path, q)?.value;
        let lower_bound = ((n - 1) as f64).powf(1.0 / q) / 4.0;
        Ok(LinftyReport { lower_bound, ratio: vq })
    }
}

/// Evaluate the chirp means along the admissible time ladder at a single
/// lambda; exposed for the runnable examples.
pub fn chirp_mean_path(
    kind: ScalingKind,
    spec: &ChirpSpec,
    q_times: usize,
    x_norm: f64,
    node_cap: usize,
) -> Result<SampledPath> {
    let profile = chirp_profile(spec);
    let cfg = FreqQuadConfig { node_cap };
    let eval_x = match kind {
        ScalingKind::Prop42 => 0.0,
        ScalingKind::Prop43 => x_norm,
    };
    let times: Vec<f64> = (1..=q_times)
        .map(|n| match kind {
            ScalingKind::Prop42 => (1.0 + n as f64 / spec.lambda).sqrt(),
            ScalingKind::Prop43 => x_norm - (9.0 / 16.0 + n as f64 / spec.lambda).sqrt(),
        })
        .collect();
    let vals = times
        .par_iter()
        .map(|&t| mean_radial_freq(&profile, spec.alpha, spec.d, t, eval_x, &cfg))
        .collect::<Result<Vec<_>>>()?;
    SampledPath::new(times, vals)
}
