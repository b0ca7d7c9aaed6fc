use serde_json::{json, Value};
use std::process::{Command, Output};

fn wb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wb")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn documented_examples() {
    assert_eq!(json_of(&wb(&["dim", "--seq", "1,-1", "--m", "2", "--n", "2", "--delta", "0"])), json!({"dim": 8}));
    assert_eq!(json_of(&wb(&["omega", "--m", "1", "--n", "1", "--delta", "0", "--k", "5"])), json!({"omega": "2"}));
    assert_eq!(json_of(&wb(&["qcancel", "--poly", "y1+y2", "--pair", "1,2"])), json!({"result": true}));
    assert_eq!(json_of(&wb(&["qcancel", "--poly", "y1*y2", "--pair", "1,2"])), json!({"result": false}));
}

#[test]
fn exit_codes() {
    assert_eq!(wb(&["dim", "--seq", "1,-1", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(wb(&["no-such-command"]).status.code(), Some(2));
    let out = wb(&["omega", "--m", "2", "--n", "2", "--delta", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate eigenvalues"));
    let out = wb(&["reduce", "--element", "{not json", "--omega", r#"{"kind":"trivial","N":2}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
}

#[test]
fn output_is_deterministic_and_sorted() {
    let args = ["struct-consts", "--seq", "1,-1", "--m", "2", "--n", "2", "--delta", "0"];
    let a = wb(&args);
    let b = wb(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.find("\"basis\"").unwrap() < text.find("\"constants\"").unwrap());
}

#[test]
fn reduce_output_is_a_fixpoint() {
    let omega = r#"{"kind":"mn_delta","m":3,"n":2,"delta":1}"#;
    let first = json_of(&wb(&["reduce", "--seq", "1,-1,1", "--word", "s1 y3 e2 y2^2 shat2 y1", "--omega", omega]));
    let elem = first["element"].to_string();
    let second = json_of(&wb(&["reduce", "--element", &elem, "--omega", omega]));
    assert_eq!(first, second);
}

#[test]
fn cyclotomic_reduction_of_a_square() {
    // y1^2 = (b1 + b2) y1 - b1 b2 with b1 = 3/2, b2 = -1/2
    let out = json_of(&wb(&["reduce", "--seq", "1", "--word", "y1^2", "--m", "3", "--n", "2", "--delta", "1", "--cyclotomic"]));
    let terms = out["element"]["terms"].as_array().unwrap();
    let coeff = |g: u64| terms.iter().find(|t| t["gamma"][0] == g).map(|t| t["coeff"].clone());
    assert_eq!(coeff(0), Some(json!("3/4")));
    assert_eq!(coeff(1), Some(json!("1")));
}

#[test]
fn multiply_matches_word() {
    let omega = r#"{"kind":"list","values":["5","7","11"]}"#;
    let e1 = json_of(&wb(&["reduce", "--seq", "1,-1", "--word", "e1", "--omega", omega]))["element"].to_string();
    let y1e1 = json_of(&wb(&["reduce", "--seq", "1,-1", "--word", "y1 e1", "--omega", omega]))["element"].to_string();
    let prod = json_of(&wb(&["multiply", "--left", &e1, "--right", &y1e1, "--omega", omega]));
    let direct = json_of(&wb(&["reduce", "--seq", "1,-1", "--word", "e1 y1 e1", "--omega", omega]));
    assert_eq!(prod, direct);
    assert_eq!(direct["element"]["terms"][0]["coeff"], json!("7"));
}

#[test]
fn representation_commands() {
    let rel = json_of(&wb(&["verify-relations", "--seq", "1,-1", "--big-n", "3"]));
    assert_eq!(rel["passed"], json!(true));
    let s8 = json_of(&wb(&["verify-s8", "--big-n", "2", "--len", "2"]));
    assert_eq!(s8["passed"], json!(true));
    let f = json_of(&wb(&["faithfulness", "--seq", "1", "--m", "2", "--n", "2", "--delta", "0"]));
    assert_eq!(f, json!({"dim": 2, "rank": 2}));
    let sp = json_of(&wb(&["spectrum", "--seq", "-1", "--m", "2", "--n", "2", "--delta", "1"]));
    assert_eq!(sp, json!({"eigenvalues": [["1"], ["2"]]}));
    let y = json_of(&wb(&["young-enum", "--seq", "-1", "--m", "2", "--n", "2", "--delta", "1"]));
    assert_eq!(y["count"], json!(2));
}

#[test]
fn centre_commands() {
    assert_eq!(json_of(&wb(&["center-test", "--poly", "y1+y2", "--seq", "1,-1"])), json!({"result": true}));
    assert_eq!(json_of(&wb(&["center-test", "--poly", "y1", "--seq", "1,-1"])), json!({"result": false}));
    let b = json_of(&wb(&["center-basis", "--seq", "1,-1", "--max-deg", "1"]));
    assert_eq!(b, json!({"basis": ["1", "y1 + y2"]}));
    let w = json_of(&wb(&["wseries", "--seq", "1,-1", "--i", "1", "--k", "2", "--omega", r#"{"kind":"list","values":["4","8","16"]}"#]));
    assert_eq!(w, json!({"coeffs": ["4", "8", "16"]}));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["struct-consts", "--seq", "-1,1", "--m", "3", "--n", "3", "--delta", "1"];
    let free = wb(&args);
    let capped = Command::new(env!("CARGO_BIN_EXE_wb")).args(args).env("WB_THREADS", "1").output().unwrap();
    assert_eq!(free.stdout, capped.stdout);
}
