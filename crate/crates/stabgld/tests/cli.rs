use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn stabgld(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabgld")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = stabgld(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    stabgld(args).status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gepner_chart_roundtrips_through_gldim() {
    let dir = tempfile::tempdir().unwrap();
    for q in ["A2", "A6", "D5", "E6"] {
        let chart = dir.path().join(format!("{q}.json"));
        let g = ok_json(&["gepner", "--quiver", q, "--out", path_str(&chart)]);
        let back = ok_json(&["gldim", "--chart", path_str(&chart)]);
        assert_eq!(g["value"], back["value"], "{q}");
        assert_eq!(back["total_stability"], "totally_stable");
    }
}

#[test]
fn gepner_examples() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("hept.svg");
    let v = ok_json(&["gepner", "--quiver", "A6", "--emit-svg", path_str(&svg)]);
    assert!((v["value"].as_f64().unwrap() - 5.0 / 7.0).abs() < 1e-12);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 14);

    let v = ok_json(&["gepner", "--quiver", "E6", "--check"]);
    assert_eq!(v["check"]["passed"], true);
    assert!((v["value"].as_f64().unwrap() - 5.0 / 6.0).abs() < 1e-12);

    assert_eq!(code(&["gepner", "--quiver", "Kronecker"]), 4);
    assert_eq!(code(&["gepner", "--quiver", "D4", "--emit-svg", path_str(&dir.path().join("d4.svg"))]), 4);
}

#[test]
fn gldim_on_charge_files() {
    let dir = tempfile::tempdir().unwrap();
    let aligned = dir.path().join("aligned.json");
    std::fs::write(&aligned, r#"{"charge": [[-1, 0], [-1, 0], [-1, 0], [-1, 0]]}"#).unwrap();
    let v = ok_json(&["gldim", "--quiver", "D4", "--charge", path_str(&aligned)]);
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["total_stability"], "totally_semistable");

    let csv = dir.path().join("ss.csv");
    ok_json(&["gldim", "--quiver", "D4", "--charge", path_str(&aligned), "--semistable-csv", path_str(&csv)]);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("root,re,im,phase,stable\n"));
    assert_eq!(table.lines().count(), 1 + 12);

    let kron = dir.path().join("kron.json");
    std::fs::write(&kron, r#"{"quiver": {"vertices": 2, "arrows": [[2, 1], [2, 1]]}, "charge": [[-1, 0], [-1, 0]]}"#)
        .unwrap();
    let v = ok_json(&["gldim", "--charge", path_str(&kron), "--truncation", "20"]);
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["truncation"], 20);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&["gldim", "--quiver", "A2", "--chart", path_str(&bad)]), 2);
    assert_eq!(code(&["gldim", "--quiver", "A2", "--charge", path_str(&dir.path().join("missing.json"))]), 2);
    assert_eq!(code(&["minimize", "--quiver", "A1"]), 2);
    assert_eq!(code(&["landscape", "--chart", "a2", "--samples", "0"]), 2);
    assert_eq!(code(&["landscape", "--chart", "a2", "--samples", "5", "--xrange", "1:-1"]), 2);
    assert_eq!(code(&["gepner", "--quiver", "A3", "--out", "/nonexistent-dir/x.json"]), 2);
}

#[test]
fn invalid_chart_exits_3_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let chart = dir.path().join("chart.json");
    // Ext¹(S_2, S_1) ≠ 0 on the standard A2, so S_2 may not sit above S_1 + 1.
    std::fs::write(
        &chart,
        r#"{"stable": [{"root": [1, 0], "phase": 0.0}, {"root": [0, 1], "phase": 1.5}],
            "charge": [[1, 0], [0, -1]]}"#,
    )
    .unwrap();
    let out = stabgld(&["gldim", "--quiver", "A2", "--chart", path_str(&chart)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(c)"));
}

#[test]
fn minimize_is_deterministic() {
    let args = ["minimize", "--quiver", "A4", "--seed", "7", "--restarts", "4"];
    let (a, b) = (stabgld(&args), stabgld(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.6).abs() < 1e-6);
    assert_eq!(v["polygon"]["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn landscape_columns() {
    let out = stabgld(&["landscape", "--chart", "kronecker", "--xrange", "-2:1", "--samples", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,gldim_formula,gldim_direct"));
    assert_eq!(lines.clone().count(), 50);
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let x: f64 = cells[0].parse().unwrap();
        if x <= 0.5 {
            assert_eq!(cells[2].parse::<f64>().unwrap(), (1.0 - x).max(1.0));
        }
    }

    let out = stabgld(&["landscape", "--chart", "a2", "--xrange", "-2:0.66", "--samples", "30"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cells[2] - cells[3]).abs() < 1e-12, "{line}");
    }
}
