use std::process::{Command, Output};

use serde_json::Value;

fn sickit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sickit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).expect("valid JSON")
}

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

#[test]
fn solve_hypercube() {
    let o = sickit(&["solve", "--graph", "hypercube:4", "--code", "sic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("11"));
}

#[test]
fn solve_json_schema() {
    let o = sickit(&["solve", "--graph", "petersen", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(keys(&v), ["nodes", "size", "status", "witness"]);
    assert_eq!(v["size"], 8);
    assert_eq!(v["status"], "optimal");
    let witness: Vec<String> = v["witness"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let set = witness.join(",");
    let o = sickit(&["verify", "--graph", "petersen", "--set", &set, "--code", "sic"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports_violations() {
    let o = sickit(&["verify", "--graph", "cycle:4", "--set", "0,1,2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(keys(&v), ["size", "valid", "violations"]);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    let o = sickit(&["verify", "--graph", "cycle:4", "--set", "0,1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exists_and_infeasible() {
    assert_eq!(sickit(&["exists", "--graph", "cycle:4"]).status.code(), Some(0));
    assert_eq!(sickit(&["exists", "--graph", "path:3"]).status.code(), Some(1));
    let o = sickit(&["solve", "--graph", "path:3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "infeasible");
    let o = sickit(&["exists", "--graph", "complete:3", "--code", "ic", "--json"]);
    assert_eq!(keys(&json(&o)), ["admits", "closed_twins", "semi_closed_twins"]);
}

#[test]
fn graph_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("k4.g6");
    std::fs::write(&g6, "C~\n").unwrap();
    let js = dir.path().join("c4.json");
    std::fs::write(&js, r#"{"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]}"#).unwrap();
    assert_eq!(sickit(&["exists", "--graph", g6.to_str().unwrap()]).status.code(), Some(1));
    let o = sickit(&["solve", "--graph", js.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("4"));
    let o = sickit(&["solve", "--graph", "IheA@GUAo"]);
    assert_eq!(stdout(&o).lines().next(), Some("8"));
    let o = sickit(&["solve", "--graph", "cp:cycle:6,path:2"]);
    assert_eq!(stdout(&o).lines().next(), Some("8"));
    assert_eq!(sickit(&["solve", "--graph", "nonsense:3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sickit(&[]).status.code(), Some(2));
    assert_eq!(sickit(&["solve"]).status.code(), Some(2));
    assert_eq!(sickit(&["solve", "--graph", "petersen", "--code", "xyz"]).status.code(), Some(2));
    assert_eq!(sickit(&["verify", "--graph", "petersen", "--set", "0,99"]).status.code(), Some(2));
    assert_eq!(sickit(&["bogus"]).status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sickit"))
        .args(["solve", "--graph", "hypercube:5", "--json"])
        .env("SICKIT_BUDGET_NODES", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["status"], "budget_exceeded");
}

#[test]
fn locate_petersen() {
    let o = sickit(&["locate", "--graph", "petersen", "--set", "0,1,2,3,4,5,6,7,8,9", "--alarms", "0,1,4,5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"], "located");
    assert_eq!(v["vertices"], serde_json::json!([0]));
}

#[test]
fn reduce_and_selfcheck() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    std::fs::write(&cnf, "c one clause\np cnf 3 1\n1 -2 3 0\n").unwrap();
    let out = dir.path().join("inst.g6");
    let meta = dir.path().join("inst.json");
    let o = sickit(&["reduce", "--cnf", cnf.to_str().unwrap(), "--out", out.to_str().unwrap(), "--meta", meta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(keys(&m), ["K", "clause_vertices", "literal_vertices"]);
    assert_eq!(m["K"], 43);
    assert_eq!(m["literal_vertices"].as_object().unwrap().len(), 6);
    let o = sickit(&["solve", "--graph", out.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("43"));
    let o = sickit(&["selfcheck", "--cnf", cnf.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["sat_oracle"], true);
    std::fs::write(&cnf, "p cnf 3 1\n1 1 2 0\n").unwrap();
    assert_eq!(sickit(&["reduce", "--cnf", cnf.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn torus_and_sweep() {
    let o = sickit(&["torus", "--family", "kng", "--dims", "6x6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(keys(&v), ["density", "domination_histogram", "nodes", "optimum_size", "spec"]);
    assert_eq!(v["density"], "1/3");
    let o = sickit(&["torus", "--family", "hex", "--dims", "6x6", "--ascii"]);
    assert!(stdout(&o).contains("density 2/3"));
    let dir = tempfile::tempdir().unwrap();
    let details = dir.path().join("d.jsonl");
    let o = sickit(&["sweep", "--cubic", "8", "--details", details.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,total,with_sic,min,max\n8,5,4,6,7\n");
    assert_eq!(std::fs::read_to_string(&details).unwrap().lines().count(), 5);
}

#[test]
fn hypercube_counts() {
    let o = sickit(&["hypercube", "--dim", "3", "--count", "--json"]);
    let v = json(&o);
    assert_eq!(keys(&v), ["dim", "iso_classes", "labeled", "sic", "witness"]);
    assert_eq!(v["sic"], 6);
    assert_eq!(v["iso_classes"], 1);
}
