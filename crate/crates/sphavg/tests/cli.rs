//! Black-box tests of the `sphavg` binary: output formats, round trips,
//! determinism, and exit codes.

use num_complex::Complex64;
use std::fs;
use std::process::{Command, Output};

use sphavg::cli::{parse_path_csv, write_path_csv};
use sphavg::means::{apply_mean_grid, GridField};
use sphavg::special::ComplexParam;
use sphavg::variation::{jump_count, var_norm, SampledPath};

fn sphavg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphavg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn bessel_subcommand_output() {
    let out = sphavg(&["bessel", "beta_re=0", "r=2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,re,im"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let re: f64 = row[1].parse().unwrap();
    assert!((re - 0.22389077914123567).abs() < 1e-13);
}

#[test]
fn multiplier_subcommand_output() {
    let out = sphavg(&["multiplier", "d=2", "alpha_re=1", "s=0"]);
    assert!(out.status.success());
    let row = stdout(&out).lines().nth(1).unwrap().to_string();
    let v: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - std::f64::consts::PI).abs() < 1e-13);
}

#[test]
fn variation_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let times: Vec<f64> = (0..9).map(|i| 0.5 * i as f64 + 1.0).collect();
    let values: Vec<Complex64> = (0..9)
        .map(|i| Complex64::new((i as f64 * 1.3).sin(), (i as f64 * 0.7).cos()))
        .collect();
    let path = SampledPath::new(times, values).unwrap();
    let csv_path = dir.path().join("path.csv");
    fs::write(&csv_path, write_path_csv(&path)).unwrap();

    // the serialized form parses back losslessly
    let back = parse_path_csv(&fs::read_to_string(&csv_path).unwrap()).unwrap();
    assert_eq!(back.times(), path.times());
    assert_eq!(back.values(), path.values());

    let out = sphavg(&[
        "variation",
        &format!("input={}", csv_path.display()),
        "q=2.5",
        "delta=0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut vq = None;
    let mut jumps = None;
    for line in text.lines().skip(1) {
        let (k, v) = line.split_once(',').unwrap();
        match k {
            "vq" => vq = Some(v.parse::<f64>().unwrap()),
            "jumps" => jumps = Some(v.parse::<usize>().unwrap()),
            other => panic!("unexpected metric '{other}'"),
        }
    }
    let want_vq = var_norm(&path, 2.5).unwrap().value;
    let want_jumps = jump_count(&path, 0.5).unwrap();
    assert!((vq.unwrap() - want_vq).abs() <= 1e-15 * (1.0 + want_vq));
    assert_eq!(jumps.unwrap(), want_jumps);
}

#[test]
fn mean_subcommand_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let field = GridField::from_fn(2, 32, 4.0, |x| {
        Complex64::new((x[0] - 2.0).tanh(), (x[1] * 0.5).sin())
    })
    .unwrap();
    let input = dir.path().join("in.vsph");
    let output = dir.path().join("out.vsph");
    field.write_to(&mut fs::File::create(&input).unwrap()).unwrap();

    let out = sphavg(&[
        "mean",
        &format!("input={}", input.display()),
        &format!("output={}", output.display()),
        "alpha_re=1",
        "t=0.5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let got = GridField::read_from(&mut fs::File::open(&output).unwrap()).unwrap();
    let want = apply_mean_grid(&field, ComplexParam::real(1.0), 0.5).unwrap();
    assert_eq!(got, want);
}

#[test]
fn scaling_outputs_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let prefix_a = dir.path().join("a");
    let prefix_b = dir.path().join("b");
    let base = [
        "scaling",
        "kind=prop42",
        "d=2",
        "alpha_re=0",
        "q=1",
        "lambda_min=200",
        "lambda_max=400",
        "lambda_steps=4",
    ];
    for prefix in [&prefix_a, &prefix_b] {
        let mut args: Vec<String> = base.iter().map(|s| s.to_string()).collect();
        args.push(format!("output={}", prefix.display()));
        let out = sphavg(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    // repeated runs are byte-identical
    for ext in ["csv", "json"] {
        let a = fs::read(prefix_a.with_extension(ext)).unwrap();
        let b = fs::read(prefix_b.with_extension(ext)).unwrap();
        assert_eq!(a, b, "{ext} output not deterministic");
    }

    let csv = fs::read_to_string(prefix_a.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("lambda,S,log_lambda,log_S"));
    assert_eq!(lines.count(), 4);

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(prefix_a.with_extension("json")).unwrap())
            .unwrap();
    for key in ["fitted_slope", "predicted_slope", "max_residual", "passed"] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    assert!(json["passed"].is_boolean());
    assert!(json["fitted_slope"].is_f64());
}

#[test]
fn exit_code_config_error() {
    // unknown subcommand
    assert_eq!(sphavg(&["frobnicate"]).status.code(), Some(2));
    // missing required key
    assert_eq!(sphavg(&["bessel", "r=2"]).status.code(), Some(2));
    // malformed value
    assert_eq!(sphavg(&["bessel", "beta_re=abc", "r=2"]).status.code(), Some(2));
    // bad lambda grid
    let out = sphavg(&[
        "scaling",
        "kind=prop42",
        "d=2",
        "alpha_re=0",
        "q=1",
        "lambda_min=400",
        "lambda_max=200",
        "lambda_steps=4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_resolution_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = sphavg(&[
        "scaling",
        "kind=prop42",
        "d=2",
        "alpha_re=0",
        "q=1",
        "lambda_min=200",
        "lambda_max=400",
        "lambda_steps=4",
        "node_cap=10",
        &format!("output={}", dir.path().join("r").display()),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exit_code_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    // narrow low-frequency window where the asymptotic exponent has not set
    // in yet, so the slope check fails by construction
    let out = sphavg(&[
        "scaling",
        "kind=prop42",
        "d=2",
        "alpha_re=0",
        "alpha_im=3",
        "q=1",
        "lambda_min=200",
        "lambda_max=320",
        "lambda_steps=4",
        "--check",
        &format!("output={}", dir.path().join("c").display()),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));

    // and the same configuration without --check exits 0
    let out = sphavg(&[
        "scaling",
        "kind=prop42",
        "d=2",
        "alpha_re=0",
        "alpha_im=3",
        "q=1",
        "lambda_min=200",
        "lambda_max=320",
        "lambda_steps=4",
        &format!("output={}", dir.path().join("n").display()),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn linfty_check_passes() {
    let out = sphavg(&["linfty", "n=8", "d=2", "q=3", "alpha_re=1", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["passed"], serde_json::Value::Bool(true));
    assert!(json["ratio"].as_f64().unwrap() >= json["lower_bound"].as_f64().unwrap());
}

#[test]
fn malformed_csv_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "t,re\n1.0,0.5\n0.5,0.7\n").unwrap(); // non-increasing times
    let out = sphavg(&["variation", &format!("input={}", bad.display()), "q=2"]);
    assert_eq!(out.status.code(), Some(2));
}
