//! Command-line front end: key=value configs, CSV/JSON emission, and the
//! subcommands wrapping the library evaluators and experiments.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::counterexample::{
    linfty_experiment, scaling_experiment, ScalingKind, ScalingReport,
};
use crate::error::{Error, Result};
use crate::means::{apply_mean_grid, FreqQuadConfig, GridField};
use crate::special::{bessel, multiplier, BesselEvalConfig, ComplexParam};
use crate::variation::{jump_count, var_inf, var_norm, SampledPath};

/// Slope tolerance gating the scaling experiments in --check mode.
pub const SLOPE_TOL: f64 = 0.15;

/// Parsed invocation: subcommand, key=value parameters, flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: String,
    pub params: BTreeMap<String, String>,
    pub check: bool,
    pub seed: u64,
}

impl RunConfig {
    /// Parses `<subcommand> key=value ... [--check]`.
    pub fn from_args<I: IntoIterator<Item = String>>(args: I) -> Result<Self> {
        let mut it = args.into_iter();
        let subcommand = it
            .next()
            .ok_or_else(|| Error::Config(usage_message()))?;
        if subcommand == "--help" || subcommand == "-h" || subcommand == "help" {
            return Err(Error::Config(usage_message()));
        }
        let known = ["bessel", "multiplier", "variation", "mean", "scaling", "linfty"];
        if !known.contains(&subcommand.as_str()) {
            return Err(Error::Config(format!(
                "unknown subcommand '{subcommand}'\n{}",
                usage_message()
            )));
        }
        let mut params = BTreeMap::new();
        let mut check = false;
        for arg in it {
            if arg == "--check" {
                check = true;
                continue;
            }
            let Some((k, v)) = arg.split_once('=') else {
                return Err(Error::Config(format!(
                    "expected key=value argument, got '{arg}'"
                )));
            };
            if k.is_empty() || v.is_empty() {
                return Err(Error::Config(format!("empty key or value in '{arg}'")));
            }
            params.insert(k.to_string(), v.to_string());
        }
        let seed = match params.get("seed") {
            None => 0,
            Some(s) => s
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("seed must be an unsigned integer, got '{s}'")))?,
        };
        Ok(Self { subcommand, params, check, seed })
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.params
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::Config(format!("{}: missing required key '{key}'", self.subcommand)))
    }

    fn get_f64(&self, key: &str) -> Result<f64> {
        let s = self.get(key)?;
        s.parse::<f64>()
            .map_err(|_| Error::Config(format!("key '{key}': expected a number, got '{s}'")))
    }

    fn get_f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.params.get(key) {
            None => Ok(default),
            Some(_) => self.get_f64(key),
        }
    }

    fn get_usize(&self, key: &str) -> Result<usize> {
        let s = self.get(key)?;
        s.parse::<usize>()
            .map_err(|_| Error::Config(format!("key '{key}': expected an integer, got '{s}'")))
    }

    fn get_usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.params.get(key) {
            None => Ok(default),
            Some(_) => self.get_usize(key),
        }
    }

    fn alpha(&self) -> Result<ComplexParam> {
        ComplexParam::new(self.get_f64("alpha_re")?, self.get_f64_or("alpha_im", 0.0)?)
            .map_err(|e| Error::Config(format!("alpha: {e}")))
    }
}

fn usage_message() -> String {
    "usage: sphavg <subcommand> key=value ... [--check]\n\
     subcommands:\n\
     \x20 bessel     beta_re= [beta_im=] r=\n\
     \x20 multiplier d= alpha_re= [alpha_im=] s=\n\
     \x20 variation  input=path.csv q= [delta=]\n\
     \x20 mean       input=field.vsph output=field.vsph alpha_re= [alpha_im=] t=\n\
     \x20 scaling    kind=prop42|prop43 d= alpha_re= [alpha_im=] q= lambda_min= lambda_max= \
     lambda_steps= [x_norm=] [node_cap=] [output=prefix]\n\
     \x20 linfty     n= d= q= alpha_re= [alpha_im=] [output=file.json]"
        .to_string()
}

/// 17-significant-digit float formatting used for all CSV output, chosen so a
/// write/read round trip is lossless.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reads a sampled path from CSV with header `t,re` or `t,re,im`.
pub fn read_path_csv(path: &Path) -> Result<SampledPath> {
    let content = fs::read_to_string(path)?;
    parse_path_csv(&content)
}

/// Parses CSV text with header `t,re[,im]` into a `SampledPath`.
/// Errors carry 1-based line and column positions.
pub fn parse_path_csv(content: &str) -> Result<SampledPath> {
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "empty input".into() })?;
    let cols: Vec<&str> = header.trim().split(',').map(str::trim).collect();
    let has_im = match cols.as_slice() {
        ["t", "re"] => false,
        ["t", "re", "im"] => true,
        _ => {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("expected header 't,re' or 't,re,im', got '{header}'"),
            })
        }
    };
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        let expected = if has_im { 3 } else { 2 };
        if fields.len() != expected {
            return Err(Error::Parse {
                line: line_no,
                col: 1,
                msg: format!("expected {expected} fields, got {}", fields.len()),
            });
        }
        let mut col_start = 1;
        let mut parse_field = |idx: usize| -> Result<f64> {
            // column = 1-based char offset of the field start
            let col = raw
                .split(',')
                .take(idx)
                .map(|s| s.len() + 1)
                .sum::<usize>()
                + 1;
            let _ = col_start;
            col_start = col;
            fields[idx].parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                col,
                msg: format!("invalid number '{}'", fields[idx]),
            })
        };
        let t = parse_field(0)?;
        let re = parse_field(1)?;
        let im = if has_im { parse_field(2)? } else { 0.0 };
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(Error::Parse {
                    line: line_no,
                    col: 1,
                    msg: format!("times must be strictly increasing ({prev} then {t})"),
                });
            }
        }
        times.push(t);
        values.push(Complex64::new(re, im));
    }
    SampledPath::new(times, values)
}

/// Writes a sampled path as `t,re,im` CSV, losslessly round-trippable.
pub fn write_path_csv(path: &SampledPath) -> String {
    let mut out = String::from("t,re,im\n");
    for (t, v) in path.times().iter().zip(path.values()) {
        let _ = writeln!(out, "{},{},{}", fmt_f64(*t), fmt_f64(v.re), fmt_f64(v.im));
    }
    out
}

fn scaling_csv(report: &ScalingReport) -> String {
    let mut out = String::from("lambda,S,log_lambda,log_S\n");
    for (l, s) in report.lambdas.iter().zip(&report.s_values) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(*l),
            fmt_f64(*s),
            fmt_f64(l.ln()),
            fmt_f64(s.ln())
        );
    }
    out
}

fn scaling_json(report: &ScalingReport) -> String {
    serde_json::json!({
        "fitted_slope": report.fitted_slope,
        "predicted_slope": report.predicted_slope,
        "max_residual": report.max_residual,
        "passed": report.passed(SLOPE_TOL),
    })
    .to_string()
}

/// Executes the configured subcommand, writing human-facing output to `out`.
/// Returns the process exit code (0 success, 1 failed --check).
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match cfg.subcommand.as_str() {
        "bessel" => {
            let beta = ComplexParam::new(cfg.get_f64("beta_re")?, cfg.get_f64_or("beta_im", 0.0)?)?;
            let r = cfg.get_f64("r")?;
            let v = bessel(beta, r, &BesselEvalConfig::default())?;
            writeln!(out, "r,re,im")?;
            writeln!(out, "{},{},{}", fmt_f64(r), fmt_f64(v.re), fmt_f64(v.im))?;
            Ok(0)
        }
        "multiplier" => {
            let d = cfg.get_usize("d")?;
            let alpha = cfg.alpha()?;
            let s = cfg.get_f64("s")?;
            let v = multiplier(d, alpha, s)?;
            writeln!(out, "s,re,im")?;
            writeln!(out, "{},{},{}", fmt_f64(s), fmt_f64(v.re), fmt_f64(v.im))?;
            Ok(0)
        }
        "variation" => {
            let input = cfg.get("input")?;
            let path = read_path_csv(Path::new(input))?;
            writeln!(out, "metric,value")?;
            let q_str = cfg.get("q")?;
            if q_str == "inf" {
                writeln!(out, "vinf,{}", fmt_f64(var_inf(&path)))?;
            } else {
                let q = cfg.get_f64("q")?;
                let res = var_norm(&path, q)?;
                writeln!(out, "vq,{}", fmt_f64(res.value))?;
            }
            if cfg.params.contains_key("delta") {
                let delta = cfg.get_f64("delta")?;
                let jumps = jump_count(&path, delta)?;
                writeln!(out, "jumps,{jumps}")?;
            }
            Ok(0)
        }
        "mean" => {
            let input = cfg.get("input")?;
            let output = cfg.get("output")?;
            let alpha = cfg.alpha()?;
            let t = cfg.get_f64("t")?;
            let field = GridField::read_from(&mut fs::File::open(input)?)?;
            let result = apply_mean_grid(&field, alpha, t)?;
            let mut fh = fs::File::create(output)?;
            result.write_to(&mut fh)?;
            writeln!(out, "wrote {} (d={}, N={})", output, result.d, result.n)?;
            Ok(0)
        }
        "scaling" => {
            let kind = match cfg.get("kind")? {
                "prop42" => ScalingKind::Prop42,
                "prop43" => ScalingKind::Prop43,
                other => {
                    return Err(Error::Config(format!(
                        "kind must be prop42 or prop43, got '{other}'"
                    )))
                }
            };
            let d = cfg.get_usize("d")?;
            let alpha = cfg.alpha()?;
            let q = cfg.get_f64("q")?;
            let lambda_min = cfg.get_f64("lambda_min")?;
            let lambda_max = cfg.get_f64("lambda_max")?;
            let steps = cfg.get_usize("lambda_steps")?;
            if steps < 4 || !(lambda_max > lambda_min) || !(lambda_min > 0.0) {
                return Err(Error::Config(
                    "need lambda_steps >= 4 and 0 < lambda_min < lambda_max".into(),
                ));
            }
            let x_norm = cfg.get_f64_or("x_norm", 2.9)?;
            let node_cap = cfg.get_usize_or("node_cap", FreqQuadConfig::default().node_cap)?;
            let ratio = lambda_max / lambda_min;
            let lambdas: Vec<f64> = (0..steps)
                .map(|i| lambda_min * ratio.powf(i as f64 / (steps - 1) as f64))
                .collect();
            let report = scaling_experiment(kind, d, alpha, q, &lambdas, x_norm, node_cap)?;
            let prefix = cfg.params.get("output").map(String::as_str).unwrap_or("scaling");
            fs::write(format!("{prefix}.csv"), scaling_csv(&report))?;
            fs::write(format!("{prefix}.json"), scaling_json(&report))?;
            writeln!(
                out,
                "fitted_slope={} predicted_slope={} max_residual={}",
                fmt_f64(report.fitted_slope),
                fmt_f64(report.predicted_slope),
                fmt_f64(report.max_residual)
            )?;
            if cfg.check && !report.passed(SLOPE_TOL) {
                writeln!(out, "check failed: |fitted - predicted| > {SLOPE_TOL}")?;
                return Ok(1);
            }
            Ok(0)
        }
        "linfty" => {
            let n = cfg.get_usize("n")?;
            let d = cfg.get_usize("d")?;
            let q = cfg.get_f64("q")?;
            let alpha = cfg.alpha()?;
            let report = linfty_experiment(n, d, q, alpha)?;
            let json = serde_json::json!({
                "lower_bound": report.lower_bound,
                "ratio": report.ratio,
                "passed": report.passed(),
            })
            .to_string();
            if let Some(path) = cfg.params.get("output") {
                fs::write(path, &json)?;
            }
            writeln!(out, "{json}")?;
            if cfg.check && !report.passed() {
                return Ok(1);
            }
            Ok(0)
        }
        _ => unreachable!("subcommand validated in from_args"),
    }
}

/// Maps an error to the process exit code: 3 for resolution failures,
/// 2 for everything else (configuration, parsing, domain, I/O).
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Resolution(_) => 3,
        _ => 2,
    }
}
