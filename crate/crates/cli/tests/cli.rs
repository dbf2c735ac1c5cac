use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfree"))
        .args(args)
        .env_remove("HFREE_WORKERS")
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l}: {e}")))
        .collect()
}

fn one_json(out: &Output) -> Value {
    let mut v = json_lines(out);
    assert_eq!(v.len(), 1, "expected one JSON object");
    v.remove(0)
}

#[test]
fn rho_prime_is_bracketed() {
    let out = hfree(&["rho-prime", "38"]);
    assert_eq!(out.status.code(), Some(0));
    let v = one_json(&out);
    let r = v["rho_prime"].as_f64().unwrap();
    let lo = v["lower_bound"].as_f64().unwrap();
    let hi = v["upper_bound"].as_f64().unwrap();
    assert!(lo < r && r < hi, "{lo} < {r} < {hi}");
    assert!((lo - (1.0 + 147f64.sqrt()) / 2.0).abs() < 1e-12);
    assert!((hi - (1.0 + 149f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn fan_contains_h43_but_extremal_construction_does_not() {
    let f5 = one_json(&hfree(&["families", "fan(5)"]))["graph6"].as_str().unwrap().to_string();
    let v = one_json(&hfree(&["check", &f5, "--pattern", "h43"]));
    assert_eq!(v["contains"], Value::Bool(true));
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);

    let s = one_json(&hfree(&["families", "s-minus(21)"]));
    assert_eq!(s["size"], 38);
    assert_eq!(s["order"], 21);
    let v = one_json(&hfree(&["check", s["graph6"].as_str().unwrap(), "--pattern", "h43"]));
    assert_eq!(v["contains"], Value::Bool(false));
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn rho_of_triangle() {
    let v = one_json(&hfree(&["rho", "Bw"]));
    assert!((v["rho"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec![],
        vec!["bogus"],
        vec!["rho", "not a graph"],
        vec!["rho-prime", "7"],
        vec!["rho", "Bw", "--tol", "0"],
        vec!["rho", "Bw", "--workers", "0"],
        vec!["families", "s(1)"],
        vec!["verify", "--suite", "other"],
        vec!["verify", "--only", "12"],
        vec!["enumerate", "--m", "20", "--connected-only"],
        vec!["audit", "--fixture", "nope"],
        vec!["audit", "A?"],
    ] {
        let out = hfree(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stdout.is_empty(), "args {args:?}");
        assert!(!out.stderr.is_empty(), "args {args:?}");
    }
    assert_eq!(hfree(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hfree.conf");
    fs::write(&cfg, "workers = 0\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(hfree(&["rho", "Bw", "--config", cfg]).status.code(), Some(2));
    assert_eq!(hfree(&["rho", "Bw", "--config", cfg, "--workers", "2"]).status.code(), Some(0));

    let env = Command::new(env!("CARGO_BIN_EXE_hfree"))
        .args(["rho", "Bw"])
        .env("HFREE_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn quick_verification_suite_passes() {
    let out = hfree(&["verify", "--suite", "paper", "--quick"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(0), "{stderr}");
    let results = json_lines(&out);
    assert_eq!(results.len(), 10);
    assert!(results.iter().all(|r| r["passed"] == Value::Bool(true)));
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn audit_fixture_range_and_single_graph() {
    let out = hfree(&["audit", "--fixture", "s-minus", "--m", "38..44"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows.iter().map(|r| r["m"].as_u64().unwrap()).collect::<Vec<_>>(), [38, 40, 42, 44]);

    let g = one_json(&hfree(&["families", "s-minus(21)"]))["graph6"].as_str().unwrap().to_string();
    let out = hfree(&["audit", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v = one_json(&out);
    assert_eq!(v["gating_ok"], Value::Bool(true));
    assert_eq!(v["final_structure"]["holds"], Value::Bool(true));
    assert_eq!(v["final_structure"]["pendants"], 1);

    let full = one_json(&hfree(&["audit", &g, "--json"]));
    assert_eq!(full["entries"].as_array().unwrap().len(), hfree::audit::ENTRY_NAMES.len());
}

fn enumerate_to(dir: &Path, m: usize, extra: &[&str]) -> (Output, String) {
    let path = dir.join(format!("m{m}.jsonl"));
    let p = path.to_str().unwrap().to_string();
    let m = m.to_string();
    let mut args = vec!["enumerate", "--m", &m, "--connected-only", "--out", &p];
    args.extend_from_slice(extra);
    (hfree(&args), p)
}

#[test]
fn interrupted_enumeration_resumes_to_the_same_file() {
    let dir = tempfile::tempdir().unwrap();
    let (full, full_path) = enumerate_to(dir.path(), 7, &[]);
    assert_eq!(full.status.code(), Some(0));

    let ck = dir.path().join("m7.ckpt").to_str().unwrap().to_string();
    let part = dir.path().join("part");
    fs::create_dir(&part).unwrap();
    let (first, part_path) = enumerate_to(&part, 7, &["--checkpoint", &ck, "--stop-after", "1"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(one_json(&first)["complete"], Value::Bool(false));
    let (second, _) = enumerate_to(&part, 7, &["--checkpoint", &ck]);
    let summary = one_json(&second);
    assert_eq!(summary["complete"], Value::Bool(true));
    assert_eq!(summary["emitted"], 79);
    assert_eq!(fs::read(full_path).unwrap(), fs::read(part_path).unwrap());
}

#[test]
fn enumeration_streams_to_stdout_without_out() {
    let out = hfree(&["enumerate", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    // Five of the four-edge classes are connected: P5, K(1,4), the fork, C4 and the paw.
    assert!(recs.iter().all(|r| r["m"] == 4));
    let connected = recs.iter().filter(|r| r["flags"]["connected"] == Value::Bool(true)).count();
    assert_eq!(connected, 5);
}

#[test]
fn report_over_the_two_pattern_runs_is_tight() {
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for m in 9..=12 {
        let (out, p) = enumerate_to(dir.path(), m, &["--forbid", "h33,h43"]);
        assert_eq!(out.status.code(), Some(0));
        paths.push(p);
    }
    let csv = dir.path().join("summary.csv");
    let mut args = vec!["report", "--csv", csv.to_str().unwrap()];
    args.extend(paths.iter().map(String::as_str));
    let out = hfree(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = one_json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["tight"] == Value::Bool(true)));
    let text = fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.contains(",yes,")));
}

#[test]
fn report_on_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.jsonl");
    fs::write(&p, "").unwrap();
    let out = hfree(&["report", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = one_json(&out);
    assert!(v["rows"].as_array().unwrap().is_empty());
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn search_writes_one_trace_per_restart() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("trace.jsonl");
    let out = hfree(&[
        "search", "--m", "9", "--forbid", "h33,h43", "--restarts", "5", "--seed", "7", "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = one_json(&out);
    assert_eq!(v["restarts"], 5);
    assert_eq!(v["config"]["rng_seed"], 7);
    assert_eq!(fs::read_to_string(&p).unwrap().lines().count(), 5);

    let again = one_json(&hfree(&["search", "--m", "9", "--forbid", "h33,h43", "--restarts", "5", "--seed", "7"]));
    assert_eq!(again["best_graph6"], v["best_graph6"]);
}
