use std::process::{Command, Output};

use serde_json::Value;

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn sci(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn three_level_report_passes() {
    let out = riesz(&["verify", "three-level", "--t", "0.3"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["suite"], "three-level");
    assert!(r["summary"]["total"].as_u64().unwrap() >= 15);
    assert_eq!(r["summary"]["failed"], 0);
    let keys: Vec<_> = r.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys.len(), 6);
}

#[test]
fn report_key_order_is_fixed() {
    let out = riesz(&["verify", "three-level", "--t", "0.3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos: Vec<usize> = [
        "\"suite\"",
        "\"params\"",
        "\"checks\"",
        "\"metrics\"",
        "\"warnings\"",
        "\"summary\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn inadmissible_parameter_fails_admissibility_only() {
    let out = riesz(&["verify", "three-level", "--t", "1.2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["three_level.admissible"]);
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn random_suite_with_ladder_is_deterministic() {
    let args = [
        "verify",
        "random",
        "--dim",
        "16",
        "--seed",
        "42",
        "--alpha",
        "poly:1",
        "--gamma",
        "sqrt-poly:1",
    ];
    let (a, b) = (riesz(&args), riesz(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["params"]["seed"], "42");
    assert_eq!(r["summary"]["failed"], 0);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"ladder.commutator"));
}

#[test]
fn projection_verify() {
    let out = riesz(&["verify", "projection", "--dim", "8", "--support", "3", "--seed", "7"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["params"]["support"], "3");
}

#[test]
fn three_level_sweep() {
    let out = riesz(&[
        "sweep",
        "three-level",
        "--t-min",
        "0",
        "--t-max",
        "1.0",
        "--steps",
        "11",
    ]);
    assert!(out.status.success());
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 11);
    let norms: Vec<f64> = reports.iter().map(|r| sci(&r["metrics"]["norm_T"])).collect();
    let spread = norms.iter().cloned().fold(f64::MIN, f64::max) - norms.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread <= 1e-10, "{spread}");
    let ts: Vec<f64> = reports
        .iter()
        .map(|r| r["params"]["t"].as_str().unwrap().parse().unwrap())
        .collect();
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(ts[10], 1.0);
}

#[test]
fn projection_sweep_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = riesz(&[
        "sweep",
        "projection",
        "--dim",
        "8",
        "--n-min",
        "2",
        "--n-max",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let reports: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 5);
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let out = riesz(&["verify", "three-level", "--t", "0.3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn usage_errors_produce_no_report() {
    for args in [
        &["sweep", "three-level", "--steps", "1"][..],
        &["sweep", "three-level", "--t-min", "1", "--t-max", "0.5"],
        &["verify", "three-level"],
        &["verify", "three-level", "--t", "7"],
        &["verify", "random", "--alpha", "cubic:2"],
        &["verify", "projection", "--dim", "4", "--support", "1"],
        &["domain", "--alpha", "poly:1", "--coeff", "list:1,2"],
        &["verify", "random", "--dim", "8", "--alpha", "list:0,1,2"],
        &["verify", "projection", "--alpha", "poly:1*1i"],
        &["domain", "--alpha", "poly:x", "--coeff", "harmonic"],
        &["--tol", "-1", "verify", "three-level", "--t", "0.3"],
    ] {
        let out = riesz(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_verdicts() {
    let verdict = |alpha: &str, coeff: &str| {
        let out = riesz(&["domain", "--alpha", alpha, "--coeff", coeff]);
        assert!(out.status.success());
        json(&out)
    };
    assert_eq!(verdict("poly:1", "geometric:0.5")["verdict"], "converged");
    let v = verdict("poly:1", "harmonic");
    assert_eq!(v["verdict"], "diverged");
    assert_eq!(v["n_max"], 4096);
    // Σ n^{-1.2} converges; block ratio 2^{-0.2} is below the decay threshold.
    let v = verdict("poly:2", "poly:-2.6");
    assert_eq!(v["verdict"], "converged");
    assert!((sci(&v["tail_ratio"]) - 2f64.powf(-0.2)).abs() < 1e-3);
}

#[test]
fn custom_tolerance_is_recorded() {
    let out = riesz(&["--tol", "1e-6", "verify", "three-level", "--t", "0.1"]);
    let r = json(&out);
    assert_eq!(r["params"]["tol"].as_str().unwrap().parse::<f64>().unwrap(), 1e-6);
    assert!((sci(&r["checks"][2]["tol"]) - 1e-6).abs() < 1e-20);
}
