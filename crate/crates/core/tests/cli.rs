use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const WORKED: &str =
    r#"{"type":"general","n":6,"k":2,"L":[1,1,1],"l":[1,1,1,1,1],"d":[2,2,2,2,2,2,2],"r":[1,1,1,1,1],"R":[1,1,1]}"#;

fn pentadet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentadet"))
        .args(args)
        .env_remove("PENTADET_THREADS")
        .output()
        .expect("binary runs")
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn compute(text: &str, extra: &[&str]) -> Output {
    let f = spec_file(text);
    let mut args = vec!["compute", "--input", f.path().to_str().unwrap()];
    args.extend_from_slice(extra);
    pentadet(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn compute_auto_picks_reduction() {
    let out = compute(WORKED, &["--method", "auto", "--scalar", "rational"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"], "16");
    assert_eq!(v["method_used"], "reduce");
    assert_eq!(v["fallbacks_taken"], Value::Array(vec![]));
}

#[test]
fn compute_dense_and_float() {
    let out = compute(WORKED, &["--method", "dense"]);
    assert_eq!(json(&out)["value"], "16");
    let out = compute(WORKED, &["--scalar", "float", "--timings"]);
    let v = json(&out);
    assert_eq!(v["value"]["sign"], 1);
    assert!((v["value"]["log_abs"].as_f64().unwrap() - 16f64.ln()).abs() < 1e-12);
    assert!(v["timings"]["reduce"].is_number());
}

#[test]
fn compute_toeplitz_and_imperfect_inputs() {
    let toeplitz = r#"{"type":"toeplitz","n":6,"k":2,"L":1,"l":1,"d":2,"r":1,"R":"1"}"#;
    let v = json(&compute(toeplitz, &[]));
    assert_eq!((v["value"].as_str(), v["method_used"].as_str()), (Some("16"), Some("toeplitz")));
    assert_eq!(json(&compute(toeplitz, &["--method", "closed"]))["value"], "16");
    let imperfect = r#"{"type":"imperfect","n":6,"k":2,"L":1,"l":1,"d":2,"r":1,"R":1,"alpha":"1/2","beta":"0"}"#;
    let auto = json(&compute(imperfect, &[]));
    let dense = json(&compute(imperfect, &["--method", "dense"]));
    assert_eq!(auto["value"], dense["value"]);
    assert_eq!(json(&compute(imperfect, &["--method", "closed"]))["value"], dense["value"]);
}

#[test]
fn exit_codes() {
    let out = compute("{\"type\":\"general\"", &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = compute(r#"{"type":"general","n":6,"k":4,"L":[],"l":[],"d":[],"r":[],"R":[]}"#, &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = pentadet(&["compute", "--input", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));

    // reduction needs q > 3 or (q = 3, p > 0); here q = 2
    let q2 = r#"{"type":"general","n":4,"k":2,"L":[1],"l":[1,1,1],"d":[2,2,2,2,2],"r":[1,1,1],"R":[1]}"#;
    let out = compute(q2, &["--method", "reduce"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"], "hypothesis");
    assert_eq!(json(&compute(q2, &[]))["method_used"], "theorem1");

    let zero = WORKED.replacen(r#""d":[2"#, r#""d":[0"#, 1);
    let out = compute(&zero, &["--method", "reduce"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!((v["j"].as_u64(), v["s"].as_u64()), (Some(0), Some(1)));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d_0"));

    let out = compute(&zero, &[]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["method_used"], "blocks");
    assert_eq!(v["value"], json(&compute(&zero, &["--method", "dense"]))["value"]);
}

#[test]
fn output_is_deterministic() {
    let a = compute(WORKED, &["--method", "blocks"]);
    let b = compute(WORKED, &["--method", "blocks"]);
    assert_eq!(a.stdout, b.stdout);
    let a = pentadet(&["verify", "--n-max", "12", "--cases", "40", "--seed", "9", "--threads", "1"]);
    let b = pentadet(&["verify", "--n-max", "12", "--cases", "40", "--seed", "9", "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_campaign_agrees() {
    let out = pentadet(&["verify", "--n-max", "20", "--cases", "200", "--seed", "42"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["passed"], 200);
    assert_eq!(v["failed"], 0);
    assert!(v["first_counterexample"].is_null());
}

#[test]
fn verify_edge_cases() {
    let out = pentadet(&["verify", "--n-max", "20", "--cases", "0", "--seed", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["passed"].as_u64(), v["failed"].as_u64()), (Some(0), Some(0)));
    assert_eq!(pentadet(&["verify", "--n-max", "1", "--cases", "5", "--seed", "1"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_pentadet"))
        .args(["verify", "--n-max", "10", "--cases", "20", "--seed", "3"])
        .env("PENTADET_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn injected_bug_is_caught() {
    let out = pentadet(&["verify", "--n-max", "20", "--cases", "200", "--seed", "42", "--inject-bug"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["failed"].as_u64().unwrap() > 0);
    let ce = &v["first_counterexample"];
    assert_ne!(ce["values"]["q3"], ce["values"]["dense"]);
}

#[test]
fn poly_subcommand() {
    let out = pentadet(&["poly", "--n", "all"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["comparisons"].as_array().unwrap().len(), 7);
    assert_eq!(v["all_equal"], true);

    let v = json(&pentadet(&["poly", "--n", "4", "--emit"]));
    assert_eq!(
        v["comparisons"][0]["polynomial"],
        "d^4 - 2*L*R*d^2 - 3*l*r*d^2 + 2*L*r^2*d + 2*R*l^2*d + 1*L^2*R^2 - 2*L*R*l*r + 1*l^2*r^2"
    );

    let out = pentadet(&["poly", "--n", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"], "range");
}

#[test]
fn bench_reports_speedup() {
    let out = pentadet(&["compute", "--bench"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dense_order"], 500);
    let orders: Vec<u64> = v["entries"].as_array().unwrap().iter().map(|e| e["order"].as_u64().unwrap()).collect();
    for order in [1_000, 10_000, 100_000] {
        assert!(orders.contains(&order));
    }
    assert!(v["speedup"].as_f64().unwrap() > 1.0);
}
