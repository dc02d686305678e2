use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_thomas"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const QUADRATIC: &str = "vars: a<b<c<x; a*x^2+b*x+c = 0";
const WORKED: &str = "vars: a < x\nx^2 + x + 1 = 0\nx + a <> 0\n";

#[test]
fn quadratic_has_four_systems() {
    let out = run(&["--json"], QUADRATIC);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mode"], "algebraic");
    assert_eq!(v["systems"].as_array().unwrap().len(), 4);
    let polys: Vec<Vec<String>> = v["systems"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().iter().map(|r| format!("{} {}", r["poly"].as_str().unwrap(), r["kind"].as_str().unwrap())).collect())
        .collect();
    assert!(polys.contains(&vec!["a =".to_string(), "b =".into(), "c =".into()]));
}

#[test]
fn json_output_is_stable() {
    let a = run(&["--json"], WORKED);
    let b = run(&["--json", "--threads", "3"], WORKED);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    for key in ["mode", "ranking", "input", "systems", "stats"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v.get("verify").is_none());
    assert_eq!(v["input"], serde_json::json!(["x^2 + x + 1 = 0", "x + a <> 0"]));
}

#[test]
fn parse_error_exit_code_and_position() {
    let out = run(&[], "vars: x\nx^2 + = 0\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:5"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn budget_exit_code() {
    let out = run(&["--step-budget", "2"], QUADRATIC);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_pass_and_report_file() {
    let dir = std::env::temp_dir().join(format!("thomas-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["--verify", "7,101", "--report", path.to_str().unwrap()], WORKED);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["primes"][0]["input_count"], 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_all_bad_primes_is_inconclusive() {
    let out = run(&["--verify", "7"], "vars: x; 1/7*x + 1 = 0");
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("inconclusive"), "{err}");
}

#[test]
fn differential_verify_is_inconclusive() {
    let text = "mode: differential\nderivations: x, t\nindeterminates: u\nu[0,1] + u*u[1,0] = 0\nu[2,0] = 0\n";
    let out = run(&["--json"], text);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["systems"].as_array().unwrap().len(), 1);
    let out = run(&["--verify", "101"], text);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn seed_runs_and_verifies() {
    let out = run(&["--seed", "3", "--json"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verify"]["verdict"], "pass");
}

#[test]
fn empty_relation_list() {
    let out = run(&["--json"], "vars: x, y\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["systems"], serde_json::json!([[]]));
}

#[test]
fn options_are_accepted() {
    for flags in [["--strategy", "leader-first"], ["--no-factor", "--json"], ["--no-coeff-reduce", "--json"], ["--delay-squarefree", "--json"]] {
        let out = run(&flags, QUADRATIC);
        assert_eq!(out.status.code(), Some(0), "{flags:?}");
    }
}
