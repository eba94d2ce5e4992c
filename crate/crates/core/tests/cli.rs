use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_minus-one"));
    c.env_remove("MINUS_ONE_DIGITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn list_entries() {
    assert_eq!(stdout(&run(&["list"])).lines().count(), 21);
    assert_eq!(stdout(&run(&["list", "--scheme-only"])).lines().count(), 15);
    let v = json(&run(&["list", "--format", "json"]));
    assert_eq!(v.as_array().unwrap().len(), 21);
}

#[test]
fn hermite_table() {
    let v = json(&run(&["tabulate", "--family", "hermite", "--n", "3", "--format", "json"]));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows[0]["u"].is_null());
    let u: Vec<&str> = rows[1..].iter().map(|r| r["u"].as_str().unwrap()).collect();
    assert_eq!(u, ["0.5", "1", "1.5"]);
}

#[test]
fn chihara_first_polynomial() {
    let v = json(&run(&[
        "tabulate", "--family", "chihara", "--params", "alpha=0.5,beta=1.5,gamma=0.25", "--n", "1", "--format", "json",
    ]));
    assert_eq!(v["rows"][1]["coefficients"], serde_json::json!(["-0.25", "1"]));
}

#[test]
fn ccbi_table_is_complex() {
    let o = run(&["tabulate", "--family", "ccbi", "--params", "a1=1,b1=0.3,a2=0.5,b2=0.7", "--n", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('i'));
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["verify", "--family", "nope"],
        &["verify", "--edge", "hermite:cbi"],
        &["verify", "--family", "hermite", "--edge", "cbi:b1j"],
        &["--digits", "12", "list"],
        &["tabulate", "--family", "chihara", "--params", "alpha=x"],
    ] {
        assert_eq!(run(args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn report_is_deterministic() {
    let args = ["verify", "--edge", "gg:gh", "--format", "json", "--no-timestamp"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    for k in ["command", "config", "results"] {
        assert!(v.get(k).is_some());
    }
    assert!(v.get("timestamp").is_none());
    let r = &v["results"][0];
    for k in ["id", "check", "status", "residual", "tolerance", "anchor", "notes"] {
        assert!(r.get(k).is_some(), "{k}");
    }
    let t = json(&run(&["verify", "--edge", "gg:gh", "--format", "json"]));
    assert!(t["timestamp"].is_string());
}

#[test]
fn digits_from_env_and_flag() {
    let o = bin().env("MINUS_ONE_DIGITS", "30").args(["verify", "--family", "h", "--format", "json", "--no-timestamp"]).output().unwrap();
    assert_eq!(json(&o)["config"]["digits"], 30);
    let o = bin()
        .env("MINUS_ONE_DIGITS", "30")
        .args(["--digits", "40", "verify", "--family", "h", "--format", "json", "--no-timestamp"])
        .output()
        .unwrap();
    assert_eq!(json(&o)["config"]["digits"], 40);
}

#[test]
fn export_matches_verified_edges() {
    let dot = stdout(&run(&["export", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    let g = json(&run(&["export", "--format", "json"]));
    let exported = g["edges"].as_array().unwrap().len();
    let v = json(&run(&["verify", "--all", "--checks", "exact,limit,ct-gt", "--format", "json", "--no-timestamp"]));
    let verified: BTreeSet<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(exported, 35);
    assert_eq!(verified.len(), exported);
}
