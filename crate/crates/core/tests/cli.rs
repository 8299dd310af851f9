use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use trisect::forward::{validate, ScatteringData, ValidationOptions};
use trisect::raygeom::Z3;

fn trisect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisect")).args(args).output().expect("run trisect")
}

fn write_potential(path: &Path, f: impl Fn(f64) -> f64) {
    let mut text = String::from("x,q\n");
    for i in 0..=400 {
        let x = 4.0 * i as f64 / 400.0;
        text.push_str(&format!("{x},{}\n", f(x)));
    }
    fs::write(path, text).unwrap();
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn identity_suite_passes() {
    let o = trisect(&["verify", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["suites"][0]["passed"], true);
    assert!(report["suites"][0]["max_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn unitarity_suite_passes_on_a_supplied_potential() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.csv");
    write_potential(&q, |x| 0.1 * (-4.0 * x).exp());
    let o = trisect(&["verify", "--suite", "unitarity", "--potential", q.to_str().unwrap(), "--support", "truncated"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = trisect(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn zeros_lists_requested_count() {
    let o = trisect(&["zeros", "--family", "1", "--count", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = String::from_utf8_lossy(&o.stdout).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    let first: Vec<&str> = lines[0].split_whitespace().collect();
    assert_eq!(first[2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn forward_of_zero_potential_gives_free_data() {
    let dir = tempfile::tempdir().unwrap();
    let (q, out) = (dir.path().join("q.csv"), dir.path().join("d.json"));
    write_potential(&q, |_| 0.0);
    let o = trisect(&["forward", "--potential", q.to_str().unwrap(), "--out", out.to_str().unwrap(), "--tmax", "3", "--ntau", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("bound states: 0"));
    let data = ScatteringData::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(data.kappas.is_empty());
    for s in data.rays.iter().flatten() {
        assert!((s.s2_re - Z3.re).abs() < 1e-10 && (s.s2_im - Z3.im).abs() < 1e-10);
    }
}

#[test]
fn forward_output_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.csv");
    write_potential(&q, |x| 0.1 * (-4.0 * x).exp());
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = trisect(&["forward", "--potential", q.to_str().unwrap(), "--out", out.to_str().unwrap(), "--tmax", "3", "--ntau", "12"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        fs::read(out).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let data = ScatteringData::from_json(std::str::from_utf8(&a).unwrap()).unwrap();
    validate(&data, &ValidationOptions::default()).unwrap();
}

#[test]
fn malformed_csv_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.csv");
    fs::write(&q, "x,q\n0,0.1\n0.5,0.05\n1.0,abc\n").unwrap();
    let o = trisect(&["forward", "--potential", q.to_str().unwrap(), "--out", dir.path().join("d.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_an_io_error() {
    let o = trisect(&["forward", "--potential", "/nonexistent/q.csv", "--out", "/tmp/never.json"]);
    assert_eq!(o.status.code(), Some(4));
}

fn forward_to(dir: &Path) -> std::path::PathBuf {
    let (q, out) = (dir.join("q.csv"), dir.join("d.json"));
    write_potential(&q, |x| 0.1 * (-4.0 * x).exp());
    let o = trisect(&["forward", "--potential", q.to_str().unwrap(), "--out", out.to_str().unwrap(), "--tmax", "3", "--ntau", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    out
}

#[test]
fn inverse_rejects_zero_norming_constant() {
    let dir = tempfile::tempdir().unwrap();
    let path = forward_to(dir.path());
    let mut data = ScatteringData::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    data.kappas = vec![0.5];
    data.b = vec![[0.0, 0.0]];
    data.b_tilde = vec![[1.0, 0.0]];
    fs::write(&path, data.to_json().unwrap()).unwrap();
    let o = trisect(&["inverse", "--data", path.to_str().unwrap(), "--out", dir.path().join("r.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(ii)"), "{}", stderr(&o));
}

#[test]
fn inverse_rejects_broken_unitarity() {
    let dir = tempfile::tempdir().unwrap();
    let path = forward_to(dir.path());
    let mut data = ScatteringData::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    data.rays[2][4].c1_re *= 1.01;
    fs::write(&path, data.to_json().unwrap()).unwrap();
    let o = trisect(&["inverse", "--data", path.to_str().unwrap(), "--out", dir.path().join("r.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(v)"), "{}", stderr(&o));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.csv");
    write_potential(&q, |_| 0.0);
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("d.json");
    fs::write(&cfg, format!("# forward run\npotential = {}\nout = {}\nt = 3\nntau = 50\n", q.display(), out.display())).unwrap();
    let o = trisect(&["--config", cfg.to_str().unwrap(), "forward", "--ntau", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let data = ScatteringData::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(data.rays[0].len(), 14);
}

#[test]
fn bad_config_values_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "product_tol = 2\n").unwrap();
    let o = trisect(&["--config", cfg.to_str().unwrap(), "zeros"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("product_tol"));
    fs::write(&cfg, "no equals sign\n").unwrap();
    let o = trisect(&["--config", cfg.to_str().unwrap(), "zeros"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn roundtrip_writes_a_two_resolution_report() {
    let dir = tempfile::tempdir().unwrap();
    let (q, rep) = (dir.path().join("q.csv"), dir.path().join("rt.json"));
    write_potential(&q, |x| 0.1 * (-4.0 * x).exp());
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "refine_stride = 10\n").unwrap();
    let o = trisect(&[
        "--config", cfg.to_str().unwrap(), "roundtrip", "--potential", q.to_str().unwrap(), "--report", rep.to_str().unwrap(),
        "--nx", "40", "--ntau", "16", "--tmax", "4",
    ]);
    // Exit 0 within tolerance, 2 otherwise; both produce a report.
    assert!(matches!(o.status.code(), Some(0) | Some(2)), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    let res = r["resolutions"].as_array().unwrap();
    assert_eq!(res.len(), 2);
    assert_eq!(res[0]["recovered_points"], 41);
    assert_eq!(res[1]["n_tau"], 32);
    assert_eq!(res[1]["recovered_points"], 5);
    assert_eq!(o.status.code() == Some(0), r["within_tolerance"].as_bool().unwrap());
}
