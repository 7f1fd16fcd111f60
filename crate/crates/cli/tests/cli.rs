use std::path::Path;
use std::process::{Command, Output};

use gt_core::json::{from_str, to_pretty};
use gt_core::kv::KvReport;
use gt_core::{BiCyclic, CyclicSeries, TDer};
use serde_json::Value;

fn gt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gt")).args(args).env_remove("GT_MAX_DEGREE").output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = gt(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    gt(args).status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bracket_of_a_symplectic_pair() {
    let out = ok(&["bracket", "--g", "1", "--n", "0", "--degree", "4", "|x1|", "|y1|"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{"cyclic_word": [], "coeff": "1"}]));
    let p: CyclicSeries = from_str(&out).unwrap();
    assert_eq!(to_pretty(&p), out);
}

#[test]
fn axioms_hold_on_a_pair_of_pants() {
    let out = ok(&["axioms", "--g", "0", "--n", "2", "--degree", "6"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_zero"], Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["nonzero"] == 0 && c["instances"].as_u64() > Some(0)));
}

#[test]
fn output_is_deterministic_and_reparses() {
    let args = ["cobracket", "--g", "1", "--n", "2", "--degree", "6", "|x1 z2 y1 z1| - 2/3|y1 y1 x1 x1|"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let d: BiCyclic = from_str(&a).unwrap();
    assert_eq!(to_pretty(&d), a);
    let s = ok(&["sigma", "--g", "1", "--n", "2", "--degree", "6", "|x1 z2 y1|"]);
    let u: TDer = from_str(&s).unwrap();
    assert_eq!(to_pretty(&u), s);
}

#[test]
fn exit_codes_separate_usage_from_domain_errors() {
    assert_eq!(code(&["bracket", "--g", "1", "--n", "0", "--bogus", "|x1|", "|y1|"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["bracket", "--g", "1", "--n", "0", "|x9|", "|y1|"]), 2);
    assert_eq!(code(&["bracket", "--g", "0", "--n", "0", "|x1|", "|y1|"]), 2);
    // div needs genus zero
    assert_eq!(code(&["div", "--g", "1", "--n", "0", "|x1 y1 x1|"]), 1);
    let capped = Command::new(env!("CARGO_BIN_EXE_gt"))
        .args(["center", "--g", "0", "--n", "2", "--degree", "8"])
        .env("GT_MAX_DEGREE", "6")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn kv_solutions_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("solution.json");
    let printed = ok(&["kv", "solve", "--g", "0", "--n", "2", "--degree", "4", "--out", path(&sol)]);
    assert_eq!(std::fs::read_to_string(&sol).unwrap(), printed);
    let report: KvReport = from_str(&printed).unwrap();
    assert!(report.is_solved());

    let check: Value = serde_json::from_str(&ok(&["kv", "check", "--solution", path(&sol)])).unwrap();
    assert_eq!(check["status"]["status"], "checked_only");
    assert_eq!(check["status"]["kvi_ok"], true);
    assert_eq!(check["status"]["kvii_ok"], true);

    let text = ok(&[
        "loop",
        "cobracket",
        "--g",
        "0",
        "--n",
        "2",
        "--degree",
        "4",
        "--kv-solution",
        path(&sol),
        "c1",
        "--format",
        "text",
    ]);
    assert_eq!(text.trim(), "-|| ⊗ |z1| + |z1| ⊗ || - 1/2 || ⊗ |z1 z1| + 1/2 |z1 z1| ⊗ ||");
}

#[test]
fn obstructions_come_with_auditable_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let framing = dir.path().join("framing.json");
    std::fs::write(&framing, r#"{"rot_boundary":[],"rot_alpha":[1],"rot_beta":[0]}"#).unwrap();
    let out = dir.path().join("report.json");
    let args =
        ["kv", "solve", "--g", "1", "--n", "0", "--degree", "3", "--framing", path(&framing), "--out", path(&out)];
    let report: Value = serde_json::from_str(&ok(&args)).unwrap();
    assert_eq!(report["status"]["status"], "obstructed");
    assert_eq!(report["status"]["degree"], 1);
    let audit: Value = serde_json::from_str(&ok(&["kv", "check", "--solution", path(&out)])).unwrap();
    assert_eq!(audit["valid"], true);
    // loop operations refuse an obstructed solution
    assert_eq!(code(&["loop", "log", "--g", "1", "--n", "0", "--kv-solution", path(&out), "a1"]), 1);
}

#[test]
fn derivations_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.json");
    std::fs::write(&u, ok(&["sigma", "--g", "0", "--n", "3", "--degree", "6", "|z1 z2 z3|"])).unwrap();
    let from_file = ok(&["tdiv", "--g", "0", "--n", "3", "--degree", "6", "--file", path(&u)]);
    let direct = ok(&["tdiv", "--g", "0", "--n", "3", "--degree", "6", "|z1 z2 z3|"]);
    assert_eq!(from_file, direct);
    assert_eq!(code(&["tdiv", "--g", "0", "--n", "2", "--file", path(&u)]), 1);
}

#[test]
fn exponential_expansion_of_a_generator() {
    let text = ok(&["expansion", "--g", "1", "--n", "0", "--degree", "2", "A1", "--format", "text"]);
    assert_eq!(text.trim(), "1 - x1 + 1/2 x1 x1");
}
