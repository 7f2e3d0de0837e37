//! q-variation norms, jump counts and the short/dyadic variation
//! decomposition of finite sampled paths.
//!
//! `var_norm` is the O(L^2) dynamic program; `var_norm_exhaustive` and
//! `jump_count_exhaustive` are literal-definition oracles for small
//! instances and exist so the fast paths can be checked against them.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Strictly increasing sample times with complex values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    times: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledPath {
    pub fn new(times: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::Domain("path must have at least one sample".into()));
        }
        if times.len() != values.len() {
            return Err(Error::Domain(format!(
                "times ({}) and values ({}) length mismatch",
                times.len(),
                values.len()
            )));
        }
        for (i, &t) in times.iter().enumerate() {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::Domain(format!("time[{i}] = {t} must be finite and > 0")));
            }
            if i > 0 && t <= times[i - 1] {
                return Err(Error::Domain(format!(
                    "times must be strictly increasing: t[{}] = {} >= t[{i}] = {t}",
                    i - 1,
                    times[i - 1]
                )));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Domain(format!("value[{i}] = {v} is not finite")));
            }
        }
        Ok(Self { times, values })
    }

    pub fn from_real(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let values = values.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        Self::new(times, values)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    fn restrict(&self, indices: &[usize]) -> SampledPath {
        SampledPath {
            times: indices.iter().map(|&i| self.times[i]).collect(),
            values: indices.iter().map(|&i| self.values[i]).collect(),
        }
    }
}

/// Value of a variation functional together with a witness subsequence.
#[derive(Debug, Clone)]
pub struct VariationResult {
    pub value: f64,
    /// Indices (0-based) of the subsequence achieving the value.
    pub witness: Vec<usize>,
}

/// q-variation norm of a sampled path:
/// max over strictly increasing index subsequences of
/// `(sum |a_{i+1} - a_i|^q)^{1/q}`.
pub fn var_norm(path: &SampledPath, q: f64) -> Result<VariationResult> {
    if q.is_infinite() && q > 0.0 {
        return var_inf_witness(path);
    }
    if !(q >= 1.0) {
        return Err(Error::Domain(format!("q must be >= 1, got {q}")));
    }
    let n = path.len();
    if n == 1 {
        return Ok(VariationResult {
            value: 0.0,
            witness: vec![0],
        });
    }
    let vals = path.values();
    // best[j]: max q-power sum over subsequences ending at j.
    let mut best = vec![0.0_f64; n];
    let mut back = vec![usize::MAX; n];
    for j in 1..n {
        for i in 0..j {
            let cand = best[i] + (vals[j] - vals[i]).norm().powf(q);
            if cand > best[j] {
                best[j] = cand;
                back[j] = i;
            }
        }
    }
    let (argmax, &max) = best
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    if max == 0.0 {
        return Ok(VariationResult {
            value: 0.0,
            witness: vec![0],
        });
    }
    let mut witness = Vec::new();
    let mut j = argmax;
    while j != usize::MAX {
        witness.push(j);
        j = back[j];
    }
    witness.reverse();
    Ok(VariationResult {
        value: max.powf(1.0 / q),
        witness,
    })
}

fn var_inf_witness(path: &SampledPath) -> Result<VariationResult> {
    let vals = path.values();
    let mut best = 0.0;
    let mut witness = vec![0];
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let d = (vals[j] - vals[i]).norm();
            if d > best {
                best = d;
                witness = vec![i, j];
            }
        }
    }
    Ok(VariationResult { value: best, witness })
}

/// Literal-definition oracle: enumerates every subsequence of length >= 2.
/// Limited to L <= 14.
pub fn var_norm_exhaustive(path: &SampledPath, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::Domain(format!("q must be >= 1, got {q}")));
    }
    let n = path.len();
    if n > 14 {
        return Err(Error::Size(format!("exhaustive oracle limited to L <= 14, got {n}")));
    }
    let vals = path.values();
    let mut best = 0.0_f64;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut sum = 0.0;
        let mut prev: Option<usize> = None;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                if let Some(p) = prev {
                    sum += (vals[i] - vals[p]).norm().powf(q);
                }
                prev = Some(i);
            }
        }
        best = best.max(sum);
    }
    Ok(best.powf(1.0 / q))
}

/// `v_infinity` functional: sup over index pairs i < j of |a_j - a_i|.
pub fn var_inf(path: &SampledPath) -> f64 {
    var_inf_witness(path).unwrap().value
}

/// Maximal number N of pairs `s_1 < t_1 <= s_2 < t_2 <= ... <= s_N < t_N`
/// (sample times) with `|a_{t_l} - a_{s_l}| > delta` for every l.
///
/// Greedy left-to-right scan: complete each jump at the earliest index
/// possible; after a completed jump at index t the next anchor window starts
/// at t itself (the definition allows s_{l+1} = t_l).
pub fn jump_count(path: &SampledPath, delta: f64) -> Result<usize> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta must be > 0, got {delta}")));
    }
    let vals = path.values();
    let mut count = 0usize;
    let mut window_start = 0usize;
    let mut j = 1usize;
    while j < vals.len() {
        let jumped = (window_start..j).any(|s| (vals[j] - vals[s]).norm() > delta);
        if jumped {
            count += 1;
            window_start = j;
        }
        j += 1;
    }
    Ok(count)
}

/// Exhaustive jump-count oracle via memoized search over all pair systems.
/// Limited to L <= 16.
pub fn jump_count_exhaustive(path: &SampledPath, delta: f64) -> Result<usize> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta must be > 0, got {delta}")));
    }
    let n = path.len();
    if n > 16 {
        return Err(Error::Size(format!("exhaustive jump oracle limited to L <= 16, got {n}")));
    }
    let vals = path.values();
    // best[p]: max jumps using pairs with s >= p.
    let mut best = vec![0usize; n + 1];
    for p in (0..n).rev() {
        best[p] = best[p + 1];
        for s in p..n {
            for t in s + 1..n {
                if (vals[t] - vals[s]).norm() > delta {
                    best[p] = best[p].max(1 + best[t]);
                }
            }
        }
    }
    Ok(best[0])
}

/// Short variation: per-dyadic-block q-variation and the combined total.
#[derive(Debug, Clone)]
pub struct ShortVariation {
    /// Block index j -> variation of the samples in `[2^j, 2^{j+1}]`.
    pub per_block: BTreeMap<i32, f64>,
    /// `(sum_j V_{q,j}^q)^{1/q}`.
    pub total: f64,
}

/// Partitions sample times into dyadic blocks `[2^j, 2^{j+1}]` (closed, so a
/// sample lying exactly on a boundary is mirrored into both adjacent blocks)
/// and computes the q-variation within each block.
pub fn short_variation(path: &SampledPath, q: f64) -> Result<ShortVariation> {
    if !(q >= 1.0) {
        return Err(Error::Domain(format!("q must be >= 1, got {q}")));
    }
    let times = path.times();
    let j_min = times[0].log2().floor() as i32;
    let j_max = times[times.len() - 1].log2().floor() as i32;
    let mut per_block = BTreeMap::new();
    let mut total_q = 0.0;
    for j in j_min..=j_max {
        let lo = 2.0_f64.powi(j);
        let hi = 2.0_f64.powi(j + 1);
        let idx: Vec<usize> = (0..path.len())
            .filter(|&i| times[i] >= lo && times[i] <= hi)
            .collect();
        if idx.len() < 2 {
            if !idx.is_empty() {
                per_block.insert(j, 0.0);
            }
            continue;
        }
        let v = var_norm(&path.restrict(&idx), q)?.value;
        total_q += v.powf(q);
        per_block.insert(j, v);
    }
    Ok(ShortVariation {
        per_block,
        total: total_q.powf(1.0 / q),
    })
}

/// q-variation over a dyadic-time subsample. Every sample time must be an
/// exact power of two (relative tolerance 1e-12).
pub fn dyadic_variation(path: &SampledPath, q: f64) -> Result<f64> {
    for &t in path.times() {
        let k = t.log2().round();
        let nearest = 2.0_f64.powf(k);
        if (t - nearest).abs() > 1e-12 * nearest {
            return Err(Error::Precondition(format!(
                "dyadic_variation: time {t} is not a power of two"
            )));
        }
    }
    Ok(var_norm(path, q)?.value)
}

/// Subpath of local extrema of a real-valued path (endpoints kept).
/// Preserves `var_norm` for every q >= 1.
pub fn extrema_reduce(path: &SampledPath) -> Result<SampledPath> {
    if !path.is_real() {
        return Err(Error::Domain("extrema_reduce requires a real-valued path".into()));
    }
    let n = path.len();
    if n <= 2 {
        return Ok(path.clone());
    }
    let vals = path.values();
    let mut keep = vec![0usize];
    for i in 1..n - 1 {
        let prev = vals[i].re - vals[*keep.last().unwrap()].re;
        let next = vals[i + 1].re - vals[i].re;
        // keep only direction changes; interior points of monotone runs
        // (including plateaus) never increase any q-variation sum
        if prev * next < 0.0 {
            keep.push(i);
        }
    }
    keep.push(n - 1);
    Ok(path.restrict(&keep))
}

/// Right-hand side of the C^1 variation bound:
/// `||F||_{L^q}^{1/q'} ||F'||_{L^q}^{1/q}` with both norms approximated by
/// the trapezoidal rule on the shared sample grid.
pub fn sobolev_rhs(f: &SampledPath, fprime: &SampledPath, q: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::Domain(format!("q must be in (1, inf), got {q}")));
    }
    if f.times() != fprime.times() {
        return Err(Error::GridMismatch(
            "sobolev_rhs: F and F' must share the same time grid".into(),
        ));
    }
    let lq = |p: &SampledPath| -> f64 {
        let t = p.times();
        let v = p.values();
        let mut acc = 0.0;
        for i in 1..p.len() {
            let a = v[i - 1].norm().powf(q);
            let b = v[i].norm().powf(q);
            acc += 0.5 * (a + b) * (t[i] - t[i - 1]);
        }
        acc.powf(1.0 / q)
    };
    let nf = lq(f);
    let nfp = lq(fprime);
    Ok(nf.powf(1.0 - 1.0 / q) * nfp.powf(1.0 / q))
}
