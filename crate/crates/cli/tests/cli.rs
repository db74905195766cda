use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cutpersist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutpersist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().expect("utf-8 path").to_string()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn generate_shrink_verify() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "blocks.txt");
    let report = path(&dir, "report.json");
    let shrunk = path(&dir, "shrunk.txt");
    let out = cutpersist(&["generate", "gplus-blocks", "--blocks", "3", "--size", "4", "--seed", "2", "--output", &inst]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(fs::read_to_string(&inst).unwrap().contains("p multicut 12"));

    let out = cutpersist(&["shrink", &inst, "--report", &report, "--output", &shrunk]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["run"]["remaining_edges"], 0);
    assert!(Path::new(&shrunk).exists());

    let out = cutpersist(&["verify", &inst, &report]);
    assert!(out.status.success(), "{}", text(&out.stdout));
    assert!(text(&out.stdout).contains("0 failures"));
}

#[test]
fn tampered_report_fails_verification() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "chain.txt");
    let report = path(&dir, "report.json");
    assert!(cutpersist(&["generate", "ising-chain", "--n", "12", "--seed", "1", "--output", &inst]).status.success());
    assert!(cutpersist(&["shrink", &inst, "--report", &report]).status.success());
    let mut json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    json["run"]["remaining_edges"] = 999.into();
    fs::write(&report, json.to_string()).unwrap();
    let out = cutpersist(&["verify", &inst, &report]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "p multicut 3 2\n0 1 1.5\n0 7 2\n").unwrap();
    let out = cutpersist(&["shrink", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("line 3"), "{}", text(&out.stderr));
    let out = cutpersist(&["oracle", &path(&dir, "missing.txt")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_and_negated_input() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "k3.txt");
    // max-form weights; after negation the minimum is -4 at the cut around node 1
    fs::write(&file, "p maxcut 3 3\n0 1 5\n0 2 -2\n1 2 -1\n").unwrap();
    let out = cutpersist(&["oracle", &file, "--negate"]);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    assert!(stdout.contains("optimum -4"), "{stdout}");
    assert!(stdout.contains("labeling 101"), "{stdout}");
}

#[test]
fn csv_report_and_ablation() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "torus.txt");
    assert!(cutpersist(&["generate", "torus2d", "--dims", "4,5", "--output", &inst]).status.success());
    let out = cutpersist(&["shrink", &inst, "--format", "csv", "--criteria", "edge,triangle"]);
    assert!(out.status.success());
    let csv = text(&out.stdout);
    assert!(csv.starts_with("section,round,key,value\n"));
    assert!(csv.contains("summary,,original_edges,40\n"), "{csv}");
    let out = cutpersist(&["ablate", &inst, "--format", "csv"]);
    assert!(out.status.success());
    assert!(text(&out.stdout).contains("ablation,,icp.edges,"));
    let out = cutpersist(&["generate", "torus3d", "--dims", "4,5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cutpersist"))
        .args(["oracle", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"p multicut 3 3\n0 1 5\n0 2 2\n1 2 -1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(text(&out.stdout).contains("optimum 0"));
}
