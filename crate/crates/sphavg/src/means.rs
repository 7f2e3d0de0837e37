//! Evaluation of the generalized spherical mean `A_t^alpha f`:
//! exact/quadrature evaluation for radial step functions at the origin,
//! spherical-cap integration for off-center ball averages, oscillatory
//! quadrature for radial frequency profiles, Fourier-multiplier application
//! on periodic grids, and the dyadic frequency window functions.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::quad;
use crate::special::{self, gamma, multiplier_cfg, sphere_area, BesselEvalConfig, ComplexParam};

/// Radial piecewise-constant function
/// `sum_j c_j chi_{[b_{j-1}, b_j)}(|x|)` in dimension `d`.
#[derive(Debug, Clone)]
pub struct RadialStep {
    breakpoints: Vec<f64>,
    coeffs: Vec<Complex64>,
    d: usize,
}

impl RadialStep {
    pub fn new(breakpoints: Vec<f64>, coeffs: Vec<Complex64>, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("RadialStep: d must be >= 2, got {d}")));
        }
        if breakpoints.len() != coeffs.len() + 1 {
            return Err(Error::Domain(
                "RadialStep: need exactly one more breakpoint than coefficients".into(),
            ));
        }
        if breakpoints[0] < 0.0 {
            return Err(Error::Domain("RadialStep: breakpoints must start at >= 0".into()));
        }
        for w in breakpoints.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Domain(format!(
                    "RadialStep: breakpoints must be strictly ascending ({} >= {})",
                    w[0], w[1]
                )));
            }
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("RadialStep: coefficients must be finite".into()));
        }
        Ok(Self { breakpoints, coeffs, d })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        if r < self.breakpoints[0] || r >= *self.breakpoints.last().unwrap() {
            return Complex64::new(0.0, 0.0);
        }
        // partition_point: first breakpoint > r
        let idx = self.breakpoints.partition_point(|&b| b <= r);
        self.coeffs[idx - 1]
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// A radial profile in frequency space: a sample rule on a bounded support.
pub struct RadialProfile {
    rule: Box<dyn Fn(f64) -> Complex64 + Sync + Send>,
    pub r_lo: f64,
    pub r_hi: f64,
    pub d: usize,
    /// Upper bound on |d(arg)/d rho| of the rule over the support, in radians
    /// per unit rho; drives the oscillatory node count.
    pub max_phase_rate: f64,
}

impl RadialProfile {
    pub fn new(
        rule: Box<dyn Fn(f64) -> Complex64 + Sync + Send>,
        r_lo: f64,
        r_hi: f64,
        d: usize,
        max_phase_rate: f64,
    ) -> Result<Self> {
        if !(r_hi > r_lo) || !r_hi.is_finite() || r_lo < 0.0 {
            return Err(Error::Domain(format!(
                "RadialProfile: invalid support [{r_lo}, {r_hi}]"
            )));
        }
        if d < 2 {
            return Err(Error::Domain("RadialProfile: d must be >= 2".into()));
        }
        Ok(Self { rule, r_lo, r_hi, d, max_phase_rate })
    }

    pub fn eval(&self, rho: f64) -> Complex64 {
        (self.rule)(rho)
    }
}

/// Node budget for oscillatory frequency-side quadrature.
#[derive(Debug, Clone, Copy)]
pub struct FreqQuadConfig {
    pub node_cap: usize,
}

impl Default for FreqQuadConfig {
    fn default() -> Self {
        Self { node_cap: 20_000_000 }
    }
}

/// `A_t^alpha f(0)` for a radial step function,
/// `sigma(S^{d-1}) / (Gamma(alpha) t^d) int_0^t (1 - r^2/t^2)^{alpha-1} f(r) r^{d-1} dr`.
///
/// For `alpha = 1` the per-step integrals are evaluated in closed form;
/// otherwise per-step quadrature with graded handling of the endpoint weight.
/// Requires `Re alpha > 0`.
pub fn mean_step_at_origin(f: &RadialStep, alpha: ComplexParam, t: f64) -> Result<Complex64> {
    if !(alpha.re > 0.0) {
        return Err(Error::Domain(format!(
            "mean_step_at_origin: Re alpha must be > 0, got {}",
            alpha.re
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("mean_step_at_origin: t must be > 0, got {t}")));
    }
    let d = f.d;
    let df = d as f64;
    if alpha.re == 1.0 && alpha.im == 0.0 {
        // A_t^1 f(0) = t^{-d} (sigma/d) sum_j c_j [min(b_j,t)^d - min(b_{j-1},t)^d]
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in f.coeffs.iter().enumerate() {
            let lo = f.breakpoints[j].min(t);
            let hi = f.breakpoints[j + 1].min(t);
            if hi > lo {
                acc += c * ((hi / t).powi(d as i32) - (lo / t).powi(d as i32));
            }
        }
        return Ok(acc * (sphere_area(d) / df));
    }
    let a = alpha.as_complex();
    let am1 = a - 1.0;
    let gamma_alpha = gamma(a);
    // Work in u = r/t so every step integral is O(1)-scaled:
    // A = sigma/Gamma(alpha) sum_j c_j int (1-u^2)^{alpha-1} u^{d-1} du.
    let weight = move |u: f64| -> Complex64 {
        // (1-u^2)^{alpha-1} via principal log; compute 1-u^2 stably near u=1
        let v = (1.0 - u) * (1.0 + u);
        (am1 * Complex64::new(v.ln(), 0.0)).exp() * Complex64::new(u.powi(d as i32 - 1), 0.0)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    let tol_scale = gamma_alpha.norm() / sphere_area(d) / (f.coeffs.len() as f64 + 1.0);
    for (j, &c) in f.coeffs.iter().enumerate() {
        let lo = (f.breakpoints[j] / t).min(1.0);
        let hi = (f.breakpoints[j + 1] / t).min(1.0);
        if hi <= lo {
            continue;
        }
        let tol = 1e-11 * tol_scale / (1.0 + c.norm());
        let split = 0.9_f64;
        let mut step_int = Complex64::new(0.0, 0.0);
        if lo < split.min(hi) {
            step_int += quad::integrate_adaptive(&weight, lo, split.min(hi), tol)?;
        }
        if hi > split {
            // near u = 1 switch to v = 1-u^2: int v^{alpha-1} (1-v)^{(d-2)/2} dv / 2
            let v_lo = (1.0 - hi) * (1.0 + hi);
            let v_hi = (1.0 - split.max(lo)) * (1.0 + split.max(lo));
            let g = move |v: f64| -> Complex64 {
                (am1 * Complex64::new(v.ln(), 0.0)).exp()
                    * Complex64::new((1.0 - v).powf((df - 2.0) / 2.0) * 0.5, 0.0)
            };
            step_int += if v_lo <= 1e-300 {
                quad::integrate_graded_left(&g, 0.0, v_hi, tol)?
            } else {
                quad::integrate_adaptive(&g, v_lo, v_hi, tol)?
            };
        }
        acc += c * step_int;
    }
    Ok(acc * sphere_area(d) / gamma_alpha)
}

/// `int_0^{theta} sin^{d-2} s ds`.
fn sin_power_integral(d: usize, theta: f64) -> f64 {
    match d {
        2 => theta,
        3 => 1.0 - theta.cos(),
        _ => quad::integrate_gl(
            &|s: f64| Complex64::new(s.sin().powi(d as i32 - 2), 0.0),
            0.0,
            theta,
            24,
        )
        .re,
    }
}

/// (d-1)-measure of the sphere `{|y| = r}` intersected with the ball
/// `B(x, t)` where `|x| = rho`.
pub fn cap_measure(d: usize, r: f64, rho: f64, t: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if t >= r + rho {
        return sphere_area(d) * r.powi(d as i32 - 1);
    }
    if r >= t + rho || rho >= r + t {
        return 0.0;
    }
    let cos_theta = ((r * r + rho * rho - t * t) / (2.0 * r * rho)).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    r.powi(d as i32 - 1) * sub_sphere_area(d) * sin_power_integral(d, theta)
}

// sigma(S^{d-2}); for d = 2 the 0-sphere has measure 2.
fn sub_sphere_area(d: usize) -> f64 {
    if d == 2 {
        2.0
    } else {
        sphere_area(d - 1)
    }
}

/// Off-center ball average `A_t^1 f(x)` of a radial step function,
/// depending on `x` only through `|x|`:
/// `t^{-d} int_0^inf f(r) capmeasure(r; |x|, t) dr`.
pub fn ball_average_offcenter(f: &RadialStep, t: f64, x_norm: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("ball_average_offcenter: t must be > 0, got {t}")));
    }
    if x_norm < 0.0 {
        return Err(Error::Domain("ball_average_offcenter: x_norm must be >= 0".into()));
    }
    if x_norm == 0.0 {
        return mean_step_at_origin(f, ComplexParam::real(1.0), t);
    }
    let d = f.d;
    let rho = x_norm;
    // integrand is non-smooth at |t - rho| and t + rho
    let kinks = [(t - rho).abs(), rho - t, t + rho];
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &c) in f.coeffs.iter().enumerate() {
        if c.norm() == 0.0 {
            continue;
        }
        let lo = f.breakpoints[j];
        let hi = f.breakpoints[j + 1].min(t + rho);
        if hi <= lo {
            continue;
        }
        let mut cuts = vec![lo, hi];
        for &k in &kinks {
            if k > lo && k < hi {
                cuts.push(k);
            }
        }
        cuts.sort_by(f64::total_cmp);
        let integrand = |r: f64| Complex64::new(cap_measure(d, r, rho, t) / t.powi(d as i32), 0.0);
        for w in cuts.windows(2) {
            acc += c * quad::integrate_adaptive(&integrand, w[0], w[1], 1e-11 / (1.0 + c.norm()))?;
        }
    }
    Ok(acc)
}

/// `A_t^alpha f(x)` for a radial frequency profile `fhat`:
/// `int_0^inf fhat(rho) m^alpha(t rho) theta(rho |x|) rho^{d-1} d rho`,
/// by composite Gauss-Legendre sized to the total phase variation.
pub fn mean_radial_freq(
    fhat: &RadialProfile,
    alpha: ComplexParam,
    d: usize,
    t: f64,
    x_norm: f64,
    cfg: &FreqQuadConfig,
) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("mean_radial_freq: t must be > 0, got {t}")));
    }
    if !(fhat.r_lo > 0.0) {
        return Err(Error::Precondition(
            "mean_radial_freq: profile support must satisfy r_lo > 0".into(),
        ));
    }
    if x_norm < 0.0 {
        return Err(Error::Domain("mean_radial_freq: x_norm must be >= 0".into()));
    }
    let bcfg = BesselEvalConfig::default();
    let rate = fhat.max_phase_rate + 2.0 * PI * t + 2.0 * PI * x_norm;
    let total_phase = rate * (fhat.r_hi - fhat.r_lo);
    let integrand = |rho: f64| -> Complex64 {
        let v = fhat.eval(rho);
        if v.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let m = multiplier_cfg(d, alpha, t * rho, &bcfg).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let th = special::sphere_fourier_cfg(d, rho * x_norm, &bcfg)
            .unwrap_or(Complex64::new(f64::NAN, 0.0));
        v * m * th * Complex64::new(rho.powi(d as i32 - 1), 0.0)
    };
    let out = quad::integrate_oscillatory(&integrand, fhat.r_lo, fhat.r_hi, total_phase, cfg.node_cap)?;
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::Resolution("mean_radial_freq: non-finite integrand".into()));
    }
    Ok(out)
}

/// Periodic d-dimensional complex sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub d: usize,
    /// Samples per axis (power of two).
    pub n: usize,
    /// Period length of the box.
    pub box_len: f64,
    /// Row-major data of length n^d (axis 0 slowest).
    pub data: Vec<Complex64>,
}

impl GridField {
    pub fn new(d: usize, n: usize, box_len: f64, data: Vec<Complex64>) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("GridField: d must be >= 1".into()));
        }
        if !n.is_power_of_two() {
            return Err(Error::Domain(format!("GridField: N must be a power of two, got {n}")));
        }
        if !(box_len > 0.0) {
            return Err(Error::Domain("GridField: box length must be > 0".into()));
        }
        if data.len() != n.pow(d as u32) {
            return Err(Error::Domain(format!(
                "GridField: data length {} != N^d = {}",
                data.len(),
                n.pow(d as u32)
            )));
        }
        Ok(Self { d, n, box_len, data })
    }

    pub fn zeros(d: usize, n: usize, box_len: f64) -> Result<Self> {
        Self::new(d, n, box_len, vec![Complex64::new(0.0, 0.0); n.pow(d as u32)])
    }

    /// Fill from a function of the grid coordinates in `[0, box)^d`.
    pub fn from_fn<F: Fn(&[f64]) -> Complex64>(
        d: usize,
        n: usize,
        box_len: f64,
        f: F,
    ) -> Result<Self> {
        let mut field = Self::zeros(d, n, box_len)?;
        let h = box_len / n as f64;
        let mut idx = vec![0usize; d];
        let mut coords = vec![0.0; d];
        for flat in 0..field.data.len() {
            let mut rem = flat;
            for ax in (0..d).rev() {
                idx[ax] = rem % n;
                rem /= n;
            }
            for ax in 0..d {
                coords[ax] = idx[ax] as f64 * h;
            }
            field.data[flat] = f(&coords);
        }
        Ok(field)
    }

    const MAGIC: &'static [u8; 4] = b"VSPH";
    const VERSION: u32 = 1;

    /// Serialize: 32-byte header {magic "VSPH", version, d, N, box} followed
    /// by little-endian complex doubles.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let mut header = [0u8; 32];
        header[0..4].copy_from_slice(Self::MAGIC);
        header[4..8].copy_from_slice(&Self::VERSION.to_le_bytes());
        header[8..12].copy_from_slice(&(self.d as u32).to_le_bytes());
        header[12..16].copy_from_slice(&(self.n as u32).to_le_bytes());
        header[16..24].copy_from_slice(&self.box_len.to_le_bytes());
        w.write_all(&header)?;
        let mut buf = Vec::with_capacity(self.data.len() * 16);
        for v in &self.data {
            buf.extend_from_slice(&v.re.to_le_bytes());
            buf.extend_from_slice(&v.im.to_le_bytes());
        }
        w.write_all(&buf)?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut header = [0u8; 32];
        r.read_exact(&mut header)?;
        if &header[0..4] != Self::MAGIC {
            return Err(Error::Parse {
                line: 0,
                col: 0,
                msg: "bad magic, expected VSPH".into(),
            });
        }
        let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
        if version != Self::VERSION {
            return Err(Error::Parse {
                line: 0,
                col: 4,
                msg: format!("unsupported version {version}"),
            });
        }
        let d = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
        let n = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
        let box_len = f64::from_le_bytes(header[16..24].try_into().unwrap());
        let count = n.pow(d as u32);
        let mut buf = vec![0u8; count * 16];
        r.read_exact(&mut buf)?;
        let data = buf
            .chunks_exact(16)
            .map(|c| {
                Complex64::new(
                    f64::from_le_bytes(c[0..8].try_into().unwrap()),
                    f64::from_le_bytes(c[8..16].try_into().unwrap()),
                )
            })
            .collect();
        Self::new(d, n, box_len, data)
    }
}

fn fft_all_axes(field: &mut GridField, inverse: bool) {
    let n = field.n;
    let d = field.d;
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let total = field.data.len();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for ax in 0..d {
        // stride of the axis in row-major order, axis 0 slowest
        let stride = n.pow((d - 1 - ax) as u32);
        let lines = total / n;
        for l in 0..lines {
            // base index of the l-th line along `ax`
            let block = l / stride;
            let offset = l % stride;
            let base = block * stride * n + offset;
            for (i, v) in line.iter_mut().enumerate() {
                *v = field.data[base + i * stride];
            }
            fft.process(&mut line);
            for (i, v) in line.iter().enumerate() {
                field.data[base + i * stride] = *v;
            }
        }
    }
}

/// Applies `A_t^alpha` on a periodic grid: forward DFT, multiply by
/// `m^alpha(t |xi_k|)` on the folded frequency lattice `xi in Z^d / box`,
/// inverse DFT. Exact on pure lattice exponentials.
pub fn apply_mean_grid(f: &GridField, alpha: ComplexParam, t: f64) -> Result<GridField> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("apply_mean_grid: t must be > 0, got {t}")));
    }
    let mut out = f.clone();
    fft_all_axes(&mut out, false);
    let n = f.n;
    let d = f.d;
    let bcfg = BesselEvalConfig::default();
    let mut cache: HashMap<u64, Complex64> = HashMap::new();
    let mut idx = vec![0usize; d];
    for flat in 0..out.data.len() {
        let mut rem = flat;
        for ax in (0..d).rev() {
            idx[ax] = rem % n;
            rem /= n;
        }
        let mut xi2 = 0.0;
        for &k in idx.iter() {
            let folded = if k > n / 2 { k as f64 - n as f64 } else { k as f64 };
            let xi = folded / f.box_len;
            xi2 += xi * xi;
        }
        let s = t * xi2.sqrt();
        let key = s.to_bits();
        let m = match cache.get(&key) {
            Some(&m) => m,
            None => {
                let m = multiplier_cfg(d.max(2), alpha, s, &bcfg)?;
                cache.insert(key, m);
                m
            }
        };
        out.data[flat] *= m;
    }
    fft_all_axes(&mut out, true);
    let scale = 1.0 / out.data.len() as f64;
    for v in &mut out.data {
        *v *= scale;
    }
    Ok(out)
}

/// C^infinity transition: 0 for u <= 0, 1 for u >= 1.
pub fn smooth_transition(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / u).exp();
        let b = (-1.0 / (1.0 - u)).exp();
        a / (a + b)
    }
}

/// Littlewood-Paley window `psi_k` on the radial variable:
/// `psi_0` equals 1 on [0, 1] and 0 on [2, inf);
/// `psi_k(s) = psi_0(2^{-k} s) - psi_0(2^{-(k-1)} s)` for k >= 1.
/// The family is a partition of unity on [0, inf).
pub fn lp_window(k: usize, s: f64) -> f64 {
    let psi0 = |s: f64| 1.0 - smooth_transition(s - 1.0);
    if k == 0 {
        psi0(s.abs())
    } else {
        psi0(s.abs() / 2.0_f64.powi(k as i32)) - psi0(s.abs() / 2.0_f64.powi(k as i32 - 1))
    }
}

/// Frequency-banded multiplier `m_k^alpha(s) = m^alpha(s) psi_k(s)`.
pub fn banded_multiplier(d: usize, alpha: ComplexParam, k: usize, s: f64) -> Result<Complex64> {
    let w = lp_window(k, s);
    if w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(special::multiplier(d, alpha, s)? * w)
}
