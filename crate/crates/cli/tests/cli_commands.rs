use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mmle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmle")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn estimate_gamma_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.csv", "1.0\n2.7182818284590452\n");
    let o = mmle(&["estimate", "--dist", "gamma", "--input", &input, "--method", "mmle"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e = std::f64::consts::E;
    assert_eq!(v["dist"], "gamma");
    assert_eq!(v["method"], "mmle");
    assert_eq!(v["n"], 2);
    assert!((v["estimates"]["lambda"].as_f64().unwrap() - (1.0 + e) / 2.0).abs() < 1e-12);
    assert!((v["estimates"]["phi"].as_f64().unwrap() - 2.0 * (1.0 + e) / (e - 1.0)).abs() < 1e-12);
    for key in ["std_errors", "avar", "flags"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["avar"].as_array().unwrap().len(), 2);
}

#[test]
fn estimate_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "b.csv", "# beta data\nx\n0.21\n0.5\n0.77\n0.43\n0.9\n");
    let o = mmle(&["estimate", "--dist", "beta", "--input", &input, "--method", "both"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["method"], "both");
    let diff = v["difference"]["alpha"].as_f64().unwrap();
    let a = v["mmle"]["estimates"]["alpha"].as_f64().unwrap();
    let b = v["mle"]["estimates"]["alpha"].as_f64().unwrap();
    assert_eq!(diff, a - b);
    assert!(v["mle"]["solver"]["iterations"].as_u64().unwrap() >= 1);
}

#[test]
fn beta_hand_example_has_no_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "b.csv", "0.3333333333\n0.6666666667\n");
    let o = mmle(&["estimate", "--dist", "beta", "--input", &input]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["estimates"]["alpha"].as_f64().unwrap() - 5.0).abs() < 1e-6);
    assert!(v["flags"].as_array().unwrap().is_empty());
    let flagged = write(dir.path(), "f.csv", "0.05\n0.5\n0.95\n");
    let v: Value = serde_json::from_str(&stdout(&mmle(&["estimate", "--dist", "beta", "--input", &flagged]))).unwrap();
    assert_eq!(v["flags"][0], "avar_out_of_domain");
    assert!(v["avar"].is_null());
}

#[test]
fn estimate_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "n.csv", "1.2\n0.8\n1.9\n1.1\n");
    let o = mmle(&["estimate", "--dist", "nakagami", "--input", &input, "--method", "both", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[mmle]") && out.contains("[mle]") && out.contains("difference"));
}

#[test]
fn estimate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write(dir.path(), "neg.csv", "1.0\n# note\n-3\n");
    let o = mmle(&["estimate", "--dist", "gamma", "--input", &neg]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let bad = write(dir.path(), "bad.csv", "1.0\nabc\n");
    let o = mmle(&["estimate", "--dist", "gamma", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));

    let o = mmle(&["estimate", "--dist", "gamma", "--input", "/nonexistent/data.csv"]);
    assert_eq!(o.status.code(), Some(2));

    let same = write(dir.path(), "same.csv", "2.5\n2.5\n2.5\n");
    for method in ["mmle", "mle"] {
        let o = mmle(&["estimate", "--dist", "wilson-hilferty", "--input", &same, "--method", method]);
        assert_eq!(o.status.code(), Some(3), "{method}");
    }
    let one = write(dir.path(), "one.csv", "2.5\n");
    assert_eq!(mmle(&["estimate", "--dist", "gamma", "--input", &one]).status.code(), Some(3));

    let outside = write(dir.path(), "unit.csv", "0.2\n1.0\n");
    assert_eq!(mmle(&["estimate", "--dist", "beta", "--input", &outside]).status.code(), Some(4));

    assert_eq!(mmle(&["estimate", "--dist", "weibull", "--input", &same]).status.code(), Some(2));
}

fn simulate(dir: &Path, extra: &[&str]) -> Output {
    let out = dir.join("res.csv");
    let mut args = vec!["simulate", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    mmle(&args)
}

#[test]
fn simulate_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("res.json");
    let o = simulate(dir.path(), &[
        "--dist", "gamma", "--lambda", "1.5", "--phi", "2", "--n-grid", "10:100:5", "--reps", "50", "--seed", "42",
        "--json", json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("res.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "estimator,parameter,n,bias,rmse,var_scaled,failures");
    assert_eq!(lines.len(), 1 + 19 * 2 * 2);

    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("res.manifest.json")).unwrap()).unwrap();
    for key in ["command", "args", "seed", "version", "started_at", "finished_at", "outputs"] {
        assert!(manifest.get(key).is_some(), "{key}");
    }
    assert_eq!(manifest["seed"], 42);
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    let result: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(result["rows"].as_array().unwrap().len(), 76);
}

#[test]
fn manifest_replay_reproduces_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let o = simulate(dir.path(), &["--dist", "beta", "--alpha", "3", "--beta", "2.5", "--n-grid", "10:30:10", "--reps", "200", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read(dir.path().join("res.csv")).unwrap();
    let replay_dir = tempfile::tempdir().unwrap();
    let out = replay_dir.path().join("again.csv");
    let manifest = dir.path().join("res.manifest.json");
    let o = mmle(&["simulate", "--replay", manifest.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read(out).unwrap(), first);
}

#[test]
fn simulate_rejects_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--dist", "gamma", "--lambda", "1.5"][..],
        &["--dist", "gamma", "--lambda", "1.5", "--phi", "-2"][..],
        &["--dist", "beta", "--alpha", "3", "--beta", "2.5", "--n-grid", "10:5:1"][..],
        &["--dist", "beta", "--alpha", "3", "--beta", "2.5", "--reps", "0"][..],
        &["--dist", "beta", "--alpha", "3", "--beta", "2.5", "--estimators", "mom"][..],
        &["--dist", "beta", "--alpha", "3", "--beta", "2.5", "--n-grid", "1:5:1"][..],
    ] {
        assert_eq!(simulate(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_mmle"))
        .args(["simulate", "--dist", "gamma", "--lambda", "1", "--phi", "1", "--reps", "5", "--out"])
        .arg(dir.path().join("x.csv"))
        .env("MMLE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_single_estimator() {
    let dir = tempfile::tempdir().unwrap();
    let o = simulate(dir.path(), &["--dist", "nakagami", "--lambda", "10", "--phi", "4", "--n-grid", "20", "--reps", "30", "--estimators", "mle"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("res.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().skip(1).all(|l| l.starts_with("mle,")));
}

#[test]
fn verify_exit_codes() {
    let o = mmle(&["verify", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 80 checks passed"));

    let o = mmle(&["verify", "--dist", "beta", "--points", "3", "--include-invalid"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DomainError"));

    assert_eq!(mmle(&["verify", "--points", "0"]).status.code(), Some(2));
}
