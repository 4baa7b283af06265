use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.conf"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersurf")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (Option<i32>, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--quiet", "--json", p]);
    let out = run(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code(), serde_json::from_str(&text).unwrap())
}

#[test]
fn theta_on_cone_ideal() {
    let cfg = corpus("cone_ideal");
    let out = run(&["theta", "--config", cfg.to_str().unwrap(), "--module", "M", "--module", "Mstar"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("theta(M, Mstar) = -1"), "{text}");
    assert!(text.contains("e = 2: l(Tor_6) = 0, l(Tor_5) = 1"), "{text}");

    let (code, v) = run_json(&["theta", "--config", cfg.to_str().unwrap(), "--module", "M", "--module", "Mstar"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["tool"], "hypersurf");
    assert_eq!(v["command"], "theta --module M --module Mstar");
    assert_eq!(v["results"][0]["theta"]["value"], -1);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["config_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn infinite_lengths_serialize_as_strings() {
    let cfg = corpus("cone_ideal");
    let (_, v) = run_json(&["tor", "--config", cfg.to_str().unwrap(), "--module", "M", "--module", "Mstar", "--range", "0..2"]);
    let entries = v["results"][0]["entries"].as_array().unwrap();
    let lengths: Vec<&Value> = entries.iter().map(|e| &e["length"]).collect();
    assert_eq!(lengths, vec![&Value::from("inf"), &Value::from(1), &Value::from(0)]);
}

#[test]
fn stable_table_has_negative_indices() {
    let cfg = corpus("a1_quadric");
    let (code, v) = run_json(&["stable", "--config", cfg.to_str().unwrap(), "--module", "M", "--range", "-2..2"]);
    assert_eq!(code, Some(0));
    let tor = v["results"][0]["tor"]["entries"].as_array().unwrap();
    assert_eq!(tor[0]["index"], -2);
    assert!(tor.iter().all(|e| e["length"] == 1));
}

#[test]
fn exit_codes() {
    let planes = corpus("transversal_planes");
    let p = planes.to_str().unwrap();
    assert_eq!(run(&["check", "dim-inequality", "--config", p, "--module", "P", "--module", "Q"]).status.code(), Some(1));
    let a1 = corpus("a1_quadric");
    let a = a1.to_str().unwrap();
    assert_eq!(run(&["check", "dim-inequality", "--config", a, "--module", "P", "--module", "Q"]).status.code(), Some(0));
    // not applicable still exits 0
    let cone = corpus("cone_ideal");
    let c = cone.to_str().unwrap();
    assert_eq!(run(&["check", "theta-vanishing", "--config", c, "--module", "M"]).status.code(), Some(0));
    assert_eq!(run(&["theta", "--config", c, "--module", "Nope"]).status.code(), Some(2));
    assert_eq!(run(&["theta", "--module", "M"]).status.code(), Some(2));
    assert_eq!(run(&["check", "no-such-property", "--config", c]).status.code(), Some(2));
    assert_eq!(run(&["resolve", "--config", c, "--module", "M", "--bound", "500"]).status.code(), Some(2));
}

#[test]
fn config_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "[ring]\nvars = x, y, u\nrelation = x*u - y\n").unwrap();
    let out = run(&["dim", "--config", path.to_str().unwrap(), "--module", "M"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 12") && err.contains("inhomogeneous"), "{err}");
}

#[test]
fn seed_changes_only_randomized_output() {
    let cfg = corpus("a1_quadric");
    let c = cfg.to_str().unwrap();
    let (_, a) = run_json(&["check", "mcm", "--config", c, "--module", "M", "--seed", "1"]);
    let (_, b) = run_json(&["check", "mcm", "--config", c, "--module", "M", "--seed", "1"]);
    let (_, d) = run_json(&["check", "mcm", "--config", c, "--module", "M", "--seed", "2"]);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 1);
    assert_ne!(a["results"][0]["report"]["probe"], d["results"][0]["report"]["probe"]);
    assert_eq!(a["verdict"], d["verdict"]);
}
