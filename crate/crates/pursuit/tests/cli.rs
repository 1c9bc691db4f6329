use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn pursuit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pursuit"))
        .args(args)
        .env_remove("PURSUIT_TD_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = pursuit(args, "");
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout)));
    (code, v)
}

/// The JSON object that ends a `play` transcript.
fn play_summary(stdout: &[u8]) -> Value {
    let s = String::from_utf8_lossy(stdout);
    serde_json::from_str(&s[s.find('{').unwrap()..]).unwrap()
}

#[test]
fn bound_on_grid() {
    let (code, v) = json(&["bound", "--gen", "grid:4"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact_c"], 2);
    assert_eq!(v["thm1"]["value"], 2);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn bound_on_clique() {
    let (code, v) = json(&["bound", "--gen", "clique:6"]);
    assert_eq!(code, 0);
    assert_eq!(v["eq1_bound"], 3);
    assert_eq!(v["exact_c"], 1);
    assert!(!v["thm_i_copwin"].is_null());
}

#[test]
fn bound_reports_are_byte_identical() {
    let args = ["bound", "--gen", "connected:9,0.3", "--seed", "7"];
    let a = pursuit(&args, "");
    let b = pursuit(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bound_on_user_files() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("g.gr");
    let td = dir.path().join("g.td");
    let s = |p: &Path| p.to_str().unwrap().to_owned();
    assert!(pursuit(&["gen", "--gen", "grid:3", "--out", &s(&gr)], "").status.success());
    assert!(pursuit(&["td", "--gr", &s(&gr), "--out", &s(&td)], "").status.success());
    assert!(std::fs::read_to_string(&gr).unwrap().starts_with("p tw 9 12\n"));

    let (code, v) = json(&["bound", "--gr", &s(&gr), "--td", &s(&td)]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 9);
    assert_eq!(v["thm1"]["value"], 2);
    assert_eq!(v["thm1"]["pool_relative"], true);
}

#[test]
fn invalid_decomposition_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("p.gr");
    let td = dir.path().join("p.td");
    std::fs::write(&gr, "p tw 3 2\n1 2\n2 3\n").unwrap();
    std::fs::write(&td, "s td 2 1 3\nb 1 1\nb 2 3\n1 2\n").unwrap();
    let (code, v) = json(&["bound", "--gr", gr.to_str().unwrap(), "--td", td.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn bad_input_exits_two_with_json() {
    let (code, v) = json(&["bound", "--gen", "bogus:3"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "invalid-input");

    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("loop.gr");
    std::fs::write(&gr, "p tw 2 1\n1 1\n").unwrap();
    let (code, v) = json(&["bound", "--gr", gr.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["message"].as_str().unwrap().contains("line 2"));

    assert_eq!(pursuit(&["bound"], "").status.code(), Some(2));
    assert_eq!(pursuit(&["bound", "--gen", "grid:3", "--budget-states", "0"], "").status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let (code, v) = json(&["simulate", "--gen", "grid:4", "--cops", "2", "--budget-states", "1"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "budget");
}

#[test]
fn td_budget_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pursuit"));
        c.args(["bound", "--gen", "connected:9,0.4", "--seed", "3"]);
        match env {
            Some(v) => c.env("PURSUIT_TD_BUDGET", v),
            None => c.env_remove("PURSUIT_TD_BUDGET"),
        };
        let out = c.output().unwrap();
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };
    assert_eq!(run(None)["treewidth_optimal"], true);
    assert_eq!(run(Some("4"))["treewidth_optimal"], false);
}

#[test]
fn simulate_grid_within_bound() {
    let (code, v) = json(&["simulate", "--gen", "grid:5", "--robber", "greedy"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "captured");
    assert_eq!(v["within_bound"], true);
    assert!(v["capture_round"].as_u64().unwrap() <= v["max_rounds"].as_u64().unwrap());
}

#[test]
fn simulate_ktree_with_one_cop() {
    let (code, v) = json(&["simulate", "--gen", "ktree:2,10", "--strategy", "thm-i", "--robber", "optimal"]);
    assert_eq!(code, 0);
    assert_eq!(v["cops"], 1);
    assert_eq!(v["outcome"], "captured");
}

#[test]
fn simulate_relay_strategy() {
    let (code, v) = json(&["simulate", "--gen", "ktree:2,9", "--strategy", "thm-main2", "--robber", "random"]);
    assert_eq!(code, 0);
    assert_eq!(v["cops"], 2);
    assert_eq!(v["outcome"], "captured");
}

#[test]
fn one_cop_loses_on_a_cycle() {
    let (code, v) = json(&["simulate", "--gen", "cycle:4", "--cops", "1", "--robber", "optimal"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "timeout");
}

#[test]
fn simulate_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.jsonl");
    let (code, v) = json(&["simulate", "--gen", "grid:3", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let trace = pursuit::trace::from_jsonl(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(trace.capture_round.map(|r| r as u64), v["capture_round"].as_u64());
}

#[test]
fn solution_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["simulate", "--gen", "petersen", "--cops", "3", "--robber", "optimal", "--cache", cache];
    let (_, a) = json(&args);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let (_, b) = json(&args);
    assert_eq!(a, b);
    assert_eq!(a["outcome"], "captured");
}

#[test]
fn play_until_capture() {
    let out = pursuit(&["play", "--gen", "path:12", "--strategy", "thm-i"], "0\nbogus\n\n\n\n\n\n\n\n\n\n");
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("cops at"));
    assert_eq!(play_summary(&out.stdout)["outcome"], "captured");
}

#[test]
fn play_quit_and_eof_are_incomplete() {
    for input in ["0\nq\n", "0\n", ""] {
        let out = pursuit(&["play", "--gen", "path:12", "--strategy", "thm-i"], input);
        assert_eq!(out.status.code(), Some(1), "{input:?}");
        assert_eq!(play_summary(&out.stdout)["outcome"], "incomplete");
    }
}

#[test]
fn text_format() {
    let out = pursuit(&["bound", "--gen", "path:4", "--format", "text"], "");
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("exact_c: 1"), "{s}");
}

#[test]
fn in_process_run() {
    let mut out = Vec::new();
    let code = pursuit::cli::run(["pursuit", "gen", "--gen", "path:3"], &mut std::io::empty(), &mut out);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "p tw 3 2\n1 2\n2 3\n");
}
