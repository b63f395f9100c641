use std::path::Path;
use std::process::{Command, Output};

use hjsplit::graph::named::{complete, cycle, path, stable, two_k2};
use serde_json::Value;

fn write<T: serde::Serialize>(dir: &Path, name: &str, value: &T) {
    std::fs::write(dir.join(name), serde_json::to_string(value).unwrap()).unwrap();
}

fn hjsplit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hjsplit"))
        .current_dir(dir)
        .env_remove("HJ_SEED")
        .args(args)
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "c5.json", &cycle(5));
    write(d, "c4.json", &cycle(4));
    write(d, "h.json", &two_k2());
    write(d, "k2.json", &complete(2));
    write(d, "s2.json", &stable(2));
    write(d, "p3.json", &path(3));
    dir
}

#[test]
fn partition_artifact_records_normalization_and_bound() {
    let dir = setup();
    let d = dir.path();
    let out = hjsplit(
        d,
        &[
            "partition",
            "--graph",
            "c5.json",
            "--H",
            "h.json",
            "--J",
            "c4.json",
            "--out",
            "p.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = read(d, "p.json");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["class_bound"], 18);
    assert_eq!(v["normalization"]["complemented"], false);
    assert!(v["partition"]["classes"].as_array().unwrap().len() <= 18);

    let verify = hjsplit(
        d,
        &[
            "verify",
            "--graph",
            "c5.json",
            "--patterns",
            "p.json",
            "--partition",
            "p.json",
        ],
    );
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn hypothesis_violation_exits_two_with_witness() {
    let dir = setup();
    let d = dir.path();
    let out = hjsplit(
        d,
        &[
            "partition",
            "--graph",
            "c4.json",
            "--H",
            "h.json",
            "--J",
            "c4.json",
            "--out",
            "p.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!d.join("p.json").exists());
    let w = read(d, "p.json.witness.json");
    assert_eq!(w["witness"]["pattern"], "J");
    assert_eq!(w["witness"]["map"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_rejects_a_bad_partition() {
    let dir = setup();
    let d = dir.path();
    let bad = serde_json::json!({
        "classes": [{ "vertices": [0, 1, 2, 3, 4], "certificate": { "avoids": 0 } }]
    });
    write(d, "bad.json", &bad);
    write(d, "pats.json", &[complete(2)]);
    let out = hjsplit(
        d,
        &[
            "verify",
            "--graph",
            "c5.json",
            "--patterns",
            "pats.json",
            "--partition",
            "bad.json",
            "--witness",
            "w.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(read(d, "w.json")["valid"], false);
}

#[test]
fn budget_refusal_exits_three() {
    let dir = setup();
    let d = dir.path();
    write(d, "pats.json", &[complete(3)]);
    let out = hjsplit(
        d,
        &[
            "oracle",
            "partition",
            "--graph",
            "c5.json",
            "--patterns",
            "pats.json",
            "--k",
            "2",
            "--budget",
            "4",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_input_exits_four() {
    let dir = setup();
    let d = dir.path();
    std::fs::write(d.join("broken.json"), "{\"n\": 3, \"edges\": [[2, 1]]}").unwrap();
    let out = hjsplit(d, &["oracle", "cograph", "--graph", "broken.json"]);
    assert_eq!(out.status.code(), Some(4));
    let missing = hjsplit(d, &["oracle", "cograph", "--graph", "absent.json"]);
    assert_eq!(missing.status.code(), Some(4));
    let usage = hjsplit(d, &["partition", "--graph", "c5.json"]);
    assert_eq!(usage.status.code(), Some(4));
    assert_eq!(hjsplit(d, &["--help"]).status.code(), Some(0));
}

#[test]
fn seed_environment_variable_matches_flag() {
    let dir = setup();
    let d = dir.path();
    let args = [
        "construct",
        "--L",
        "k2.json",
        "--M",
        "k2.json",
        "--n",
        "50",
        "--r",
        "5",
        "--k",
        "2",
    ];
    let with_flag = hjsplit(d, &[&args[..], &["--seed", "9"]].concat());
    let with_env = Command::new(env!("CARGO_BIN_EXE_hjsplit"))
        .current_dir(d)
        .env("HJ_SEED", "9")
        .args(args)
        .output()
        .unwrap();
    let default = hjsplit(d, &args);
    assert_eq!(with_flag.status.code(), Some(0));
    assert_eq!(with_flag.stdout, with_env.stdout);
    assert_ne!(with_flag.stdout, default.stdout);
    let v: Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(v["params"]["seed"], 9);
}

#[test]
fn dot_export_is_written() {
    let dir = setup();
    let d = dir.path();
    let out = hjsplit(d, &["oracle", "cograph", "--graph", "c4.json"]);
    assert_eq!(out.status.code(), Some(0));
    let part = hjsplit(
        d,
        &[
            "partition",
            "--graph",
            "c5.json",
            "--H",
            "h.json",
            "--J",
            "c4.json",
            "--dot",
            "g.dot",
            "--out",
            "p.json",
        ],
    );
    assert_eq!(part.status.code(), Some(0));
    let dot = std::fs::read_to_string(d.join("g.dot")).unwrap();
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches("--").count(), 5);
}

#[test]
fn cosplit_accepts_cotree_patterns() {
    let dir = setup();
    let d = dir.path();
    let h = serde_json::json!({ "op": "union", "children": [
        { "op": "join", "children": [{ "op": "leaf" }, { "op": "leaf" }] },
        { "op": "join", "children": [{ "op": "leaf" }, { "op": "leaf" }] }
    ]});
    write(d, "h_cotree.json", &h);
    let out = hjsplit(
        d,
        &[
            "cosplit",
            "--graph",
            "c5.json",
            "--H",
            "h_cotree.json",
            "--J",
            "c4.json",
            "--out",
            "s.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read(d, "s.json");
    let covered = v["x"].as_array().unwrap().len() + v["y"].as_array().unwrap().len();
    assert_eq!(covered, 5);
}

#[test]
fn universal_rejects_disconnected_patterns() {
    let dir = setup();
    let d = dir.path();
    write(d, "fam.json", &[two_k2()]);
    let out = hjsplit(d, &["universal", "--patterns", "fam.json", "--P", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
