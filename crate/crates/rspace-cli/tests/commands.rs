use std::process::Command;

use serde_json::Value;

fn rspace(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rspace")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn scenario(name: &str) -> String {
    format!("{}/scenarios/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn solve_min_even() {
    let (code, v, _) = rspace(&["solve", &scenario("min_even.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["side"], "I");
    assert_eq!(v["verdicts"][0]["goal"]["set"], "complement");
    assert_eq!(v["verdicts"][0]["wins"], true);
    assert_eq!(v["verdicts"][1]["wins"], false);
    assert!(v["verdicts"][0]["strategy"]["play"].is_object());
}

#[test]
fn solve_singleton_and_biasymptotic() {
    let (code, v, _) = rspace(&["solve", &scenario("singleton.json"), "--summary"]);
    assert_eq!(code, 0);
    assert_eq!(v["side"], "II");
    let (code, v, _) = rspace(&["solve", &scenario("finpm2_last_in_y.json"), "--summary"]);
    assert_eq!(code, 0);
    assert_eq!(v["side"], "II");
}

#[test]
fn schema_errors_exit_2() {
    let (code, _, err) = rspace(&["solve", &scenario("bad_payoff.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("schema error"), "{err}");
    let (code, _, _) = rspace(&["solve", "/nonexistent/scenario.json"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "fin2", "--checks", "a1,wa2", "--seed", "7", "--samples", "50"];
    let (code, a, _) = rspace(&args);
    assert_eq!(code, 0);
    let (_, b, _) = rspace(&args);
    assert_eq!(a, b);
    let reports = a["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    let (code, _, err) = rspace(&["verify", "fin2", "--checks", "a7"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown check"));
}

#[test]
fn spaces_and_span() {
    let (code, v, _) = rspace(&["spaces", "list"]);
    assert_eq!(code, 0);
    assert_eq!(v["spaces"].as_array().unwrap().len(), 10);
    let (code, v, _) = rspace(&["span", "fin2:[{0:2},{1:1,2:2}]"]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 5);
    let (code, _, _) = rspace(&["span", "ellentuck:{0,2}"]);
    assert_eq!(code, 1);
}
