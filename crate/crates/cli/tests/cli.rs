use assert_cmd::Command;
use serde_json::Value;

fn qlidstone() -> Command {
    Command::cargo_bin("qlidstone").unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = qlidstone().args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn beta_numbers_csv() {
    let out = qlidstone().args(["numbers", "--kind", "beta", "--s", "1/2", "--order", "8", "--format", "csv"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,numerator,denominator"));
    assert_eq!(lines.nth(1), Some("1,-1,2"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn identities_all_pass() {
    let v = run_json(&["identities", "--all", "--s", "1/2", "--order", "8"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["identities"].as_array().unwrap().iter().map(|i| i["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"q_square_relation"));
    assert!(names.iter().any(|n| n.starts_with("connection")));
}

#[test]
fn unknown_identity_is_usage_error() {
    qlidstone().args(["identities", "--name", "no_such_identity"]).assert().code(2);
}

#[test]
fn exact_expansion_record() {
    let v = run_json(&["expand", "--kind", "bernoulli", "--fn", "phi:4:1/2", "--K", "2", "--s", "1/2"]);
    assert_eq!(v["residual"], "exact-zero");
    assert_eq!(v["reconstruction"]["basis"], "monomial");
    assert_eq!(v["data_at_0"].as_array().unwrap().len(), 3);
}

#[test]
fn expansion_csv_columns() {
    let out = qlidstone().args(["expand", "--kind", "euler", "--fn", "rho:3", "--K", "2", "--format", "csv"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("k,data_at_0,data_at_eta,term_size"));
}

fn write_stream(dir: &tempfile::TempDir, c: &[f64]) -> String {
    let path = dir.path().join("f.json");
    std::fs::write(&path, serde_json::to_string(c).unwrap()).unwrap();
    format!("stream:@{}", path.display())
}

#[test]
fn stream_input_float_residual() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = vec![1.0, 0.5, 0.25, 0.125];
    c.resize(16, 0.0);
    let spec = write_stream(&dir, &c);
    let v = run_json(&["expand", "--kind", "bernoulli", "--fn", &spec, "--K", "4", "--s", "1/2"]);
    assert!(v["residual"].as_f64().unwrap() < 1e-10, "{}", v["residual"]);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn fast_growing_stream_warns() {
    let dir = tempfile::tempdir().unwrap();
    let c: Vec<f64> = (0..12).map(|k| 0.1f64.powi(k)).collect();
    let spec = write_stream(&dir, &c);
    let v = run_json(&["expand", "--kind", "bernoulli", "--fn", &spec, "--K", "4", "--s", "1/2"]);
    assert!(v["tau"].as_f64().unwrap() > 1.0);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn zeros_report_bound_check() {
    let v = run_json(&["zeros", "--kind", "Sq_eta", "--q", "1/16", "--count", "2"]);
    let z = v["zeros"].as_array().unwrap();
    assert_eq!(z.len(), 2);
    assert_eq!(z[0]["bound_check"], true);
    assert!((z[0]["value"].as_f64().unwrap() - 7.6992219681).abs() < 1e-8);
}

#[test]
fn q_must_be_a_fourth_power() {
    qlidstone().args(["numbers", "--q", "1/2"]).assert().code(2);
    let v = run_json(&["numbers", "--q", "1/16"]);
    assert_eq!(v["config"]["s"], "1/2");
}

#[test]
fn usage_errors_exit_2() {
    qlidstone().args(["numbers", "--s", "3/2"]).assert().code(2);
    qlidstone().args(["numbers", "--s", "abc"]).assert().code(2);
    qlidstone().args(["numbers", "--order", "0"]).assert().code(2);
    qlidstone().args(["expand", "--fn", "sin:3"]).assert().code(2);
    qlidstone().args(["frobnicate"]).assert().code(2);
    qlidstone().env("QLIDSTONE_THREADS", "zero").args(["numbers"]).assert().code(2);
}

#[test]
fn guichard_gaussian_verifies() {
    let v = run_json(&["guichard", "--s", "1/2", "--p", "4", "--preset", "alsalam_half", "--gaussian", "1/4", "--order", "30"]);
    assert_eq!(v["verification"]["passed"], true);
    assert!(v["verification"]["exact_through"].as_u64().unwrap() >= 30);
}

#[test]
fn guichard_growth() {
    let v = run_json(&["guichard", "--p", "4", "--growth", "--order", "20"]);
    assert_eq!(v["bounded"], true);
    assert!(v["argmax"].as_u64().unwrap() <= 6);
}

#[test]
fn exact_output_is_byte_identical() {
    let args = ["polys", "--family", "suslov_E", "--order", "6", "--s", "3/5"];
    let a = qlidstone().args(args).output().unwrap().stdout;
    let b = qlidstone().env("QLIDSTONE_THREADS", "1").args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.json");
    qlidstone()
        .args(["lidstone-basis", "--basis", "A", "--order", "3", "--output", path.to_str().unwrap()])
        .assert()
        .success();
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
}
