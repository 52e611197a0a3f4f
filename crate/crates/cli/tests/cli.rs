use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use listcolor::instance::{coloring_from_json, parse_instance};
use listcolor::oracle::validate_coloring;
use serde_json::Value;

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_listcolor")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    here(&format!("fixtures/{name}")).display().to_string()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", o.stdout))
}

/// Compares against the stored file, with timing fields zeroed.
fn assert_golden(o: &Output, name: &str) {
    let mut got = stdout_json(o);
    if let Some(s) = got.get_mut("stats") {
        s["wall_ms"] = 0.into();
    }
    let text = std::fs::read_to_string(here(&format!("golden/{name}"))).unwrap();
    let want: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(got, want, "{name}");
}

#[test]
fn solve_triangle_fixture() {
    let o = run(&["solve", &fixture("triangle.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["colors"].as_object().unwrap().len(), 3);
    assert_golden(&o, "solve_triangle.json");
}

#[test]
fn solve_k5_validates() {
    let o = run(&["solve", &fixture("k5.json")]);
    assert_eq!(o.status.code(), Some(0));
    let inst = parse_instance(&std::fs::read_to_string(fixture("k5.json")).unwrap()).unwrap();
    let c = coloring_from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(validate_coloring(inst.graph(), &inst.lists, &c).is_empty());
    assert_golden(&o, "solve_k5.json");
}

#[test]
fn solve_writes_stats_file() {
    let dir = std::env::temp_dir().join(format!("listcolor-stats-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stats.json");
    let o = run(&["solve", &fixture("k5.json"), "--no-fallback", "--stats", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let stats: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(stats["fallback_calls"], 0);
    for key in ["rules", "endgame", "base_cases", "max_depth", "wall_ms", "oracle_nodes"] {
        assert!(stats.get(key).is_some(), "{key}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn solve_batch_reports_each_file() {
    let o = run(&["solve", &fixture("triangle.json"), &fixture("k5.json"), &fixture("k4_short.json"), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let v = stdout_json(&o);
    let codes: Vec<i64> = v.as_array().unwrap().iter().map(|e| e["code"].as_i64().unwrap()).collect();
    assert_eq!(codes, [0, 0, 3]);
}

#[test]
fn verify_broken_coloring() {
    let o = run(&["verify", &fixture("triangle.json"), &fixture("triangle_broken.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_golden(&o, "verify_broken.json");
}

#[test]
fn verify_accepts_solver_output() {
    let dir = std::env::temp_dir().join(format!("listcolor-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.json");
    let o = run(&["solve", &fixture("k5.json")]);
    std::fs::write(&path, &o.stdout).unwrap();
    let o = run(&["verify", &fixture("k5.json"), path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["ok"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn choosable_odd_cycle() {
    let o = run(&["choosable", "Dhc", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_golden(&o, "choosable_c5.json");
    let o = run(&["choosable", "Dhc", "--k", "3", "--palette", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["witness"], Value::Null);
}

#[test]
fn gen_is_reproducible() {
    let a = run(&["gen", "--n", "10", "--crossings", "2", "--seed", "7"]);
    let b = run(&["gen", "--n", "10", "--crossings", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_golden(&a, "gen_n10_c2_s7.json");
    let inst = parse_instance(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(inst.crossing_count(), 2);
}

#[test]
fn oracle_reports_unsatisfiable() {
    let o = run(&["oracle", &fixture("k4_short.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert_golden(&o, "oracle_k4_short.json");
}

#[test]
fn budget_exhaustion_exits_four() {
    let o = run(&["oracle", &fixture("k4_short.json"), "--budget", "3"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout_json(&o).get("error").is_some());
}

#[test]
fn bad_input_exits_three() {
    for args in [
        vec!["solve".to_string(), fixture("not_json.json")],
        vec!["solve".to_string(), fixture("k4_short.json")],
        vec!["choosable".to_string(), "!!".to_string(), "--k".to_string(), "2".to_string()],
        vec!["gen".to_string(), "--n".to_string(), "2".to_string()],
        vec!["frobnicate".to_string()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
