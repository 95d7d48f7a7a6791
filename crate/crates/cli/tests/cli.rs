use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ordcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcat"))
        .args(args)
        .env_remove("ORDCAT_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_laws_small_run_is_clean() {
    for backend in ["ord", "vcat"] {
        let o = ordcat(&[
            "check-laws",
            "--backend",
            backend,
            "--iterations",
            "20",
            "--max-size",
            "4",
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
        assert!(String::from_utf8_lossy(&o.stdout).contains("0 violation(s)"));
    }
}

#[test]
fn check_laws_rejects_bad_flags() {
    assert_eq!(code(&ordcat(&["check-laws", "--iterations", "0"])), 2);
    assert_eq!(code(&ordcat(&["check-laws", "--backend", "set"])), 2);
    assert_eq!(code(&ordcat(&["check-laws", "--max-size", "-1"])), 2);
    assert_eq!(code(&ordcat(&["frobnicate"])), 2);
}

#[test]
fn injected_bad_law_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = ordcat(&[
        "check-laws",
        "--iterations",
        "50",
        "--max-size",
        "4",
        "--inject-bad-law",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let r = read_json(&out);
    let bad = r["laws"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["law"] == "injected-bad-law")
        .unwrap();
    assert_eq!(bad["status"], "violated");
    assert!(bad["witness"]["instance"].is_object());
}

#[test]
fn same_seed_gives_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str| {
        let p = dir.path().join(name);
        let o = ordcat(&[
            "check-laws",
            "--iterations",
            "15",
            "--max-size",
            "4",
            "--seed",
            seed,
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.json", "7"), run("b.json", "7"));
    assert_ne!(run("c.json", "7"), run("d.json", "8"));
}

#[test]
fn env_seed_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    let o = Command::new(env!("CARGO_BIN_EXE_ordcat"))
        .args([
            "check-laws",
            "--iterations",
            "5",
            "--max-size",
            "3",
            "--seed",
            "1",
            "--json",
            p.to_str().unwrap(),
        ])
        .env("ORDCAT_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(read_json(&p)["seed"], 42);
    let bad = Command::new(env!("CARGO_BIN_EXE_ordcat"))
        .args(["check-laws", "--iterations", "5"])
        .env("ORDCAT_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn every_replay_passes() {
    for id in ordcat::replay::REPLAY_IDS {
        let o = ordcat(&["replay", id]);
        assert_eq!(code(&o), 0, "{id}: {}", String::from_utf8_lossy(&o.stdout));
    }
    assert_eq!(code(&ordcat(&["replay", "no-such-example"])), 2);
}

#[test]
fn replay_json_carries_schema() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    assert_eq!(
        code(&ordcat(&[
            "replay",
            "gregarious-D",
            "--json",
            p.to_str().unwrap()
        ])),
        0
    );
    let v = read_json(&p);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["details"]["printed_witness_discrepancy"], true);
}

#[test]
fn classify_empty_table_at_size_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    assert_eq!(
        code(&ordcat(&[
            "classify-vcat",
            "--quantale",
            "V2",
            "--max-size",
            "0",
            "--json",
            p.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(read_json(&p)["details"]["table"], Value::Array(vec![]));
}

#[test]
fn classify_boolean_matches_equivalence_relations() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    assert_eq!(
        code(&ordcat(&[
            "classify-vcat",
            "--quantale",
            "V2",
            "--max-size",
            "3",
            "--json",
            p.to_str().unwrap()
        ])),
        0
    );
    let v = read_json(&p);
    let table = v["details"]["table"].as_array().unwrap();
    // 1 + 4 + 29 preorders on labelled carriers of size 1, 2, 3.
    assert_eq!(table.len(), 34);
    for row in table {
        assert_eq!(row["w_maltsev_object"], row["equivalence_relation"]);
    }
    let objects = table
        .iter()
        .filter(|r| r["w_maltsev_object"] == true)
        .count();
    assert_eq!(objects, 1 + 2 + 5);
}

#[test]
fn classify_rejects_non_integral_quantale() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(
        dir.path(),
        "q.json",
        r#"{"quantale": {"size": 2, "leq": [[true, true], [false, true]], "tensor": [[0, 0], [0, 1]], "unit": 0}}"#,
    );
    let o = ordcat(&["classify-vcat", "--quantale", &q, "--max-size", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unit not top"));
    assert_eq!(
        code(&ordcat(&[
            "classify-vcat",
            "--quantale",
            "no-such-quantale"
        ])),
        2
    );
}

#[test]
fn wmaltsev_small_objects() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("empty", r#"{"preorder": {"size": 0, "leq": []}}"#, true),
        (
            "one",
            r#"{"preorder": {"size": 1, "leq": [[true]]}}"#,
            false,
        ),
        (
            "chain",
            r#"{"preorder": {"size": 2, "leq": [[true, true], [false, true]]}}"#,
            false,
        ),
    ];
    for (name, text, expected) in cases {
        let f = write(dir.path(), &format!("{name}.json"), text);
        let out = dir.path().join(format!("{name}.out.json"));
        let o = ordcat(&["wmaltsev", "--object", &f, "--json", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}");
        let v = read_json(&out);
        assert_eq!(v["details"]["w_maltsev_object"], expected, "{name}");
        assert_eq!(v["details"]["direct_search"]["holds"], expected, "{name}");
    }
}

#[test]
fn wmaltsev_discrete_two_matches_direct_search() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "d2.json",
        r#"{"preorder": {"size": 2, "leq": [[true, false], [false, true]]}}"#,
    );
    let out = dir.path().join("o.json");
    assert_eq!(
        code(&ordcat(&[
            "wmaltsev",
            "--object",
            &f,
            "--json",
            out.to_str().unwrap()
        ])),
        0
    );
    let v = read_json(&out);
    assert_eq!(v["details"]["agreement"], true);
    assert_eq!(
        v["details"]["w_maltsev_object"],
        v["details"]["direct_search"]["holds"]
    );
}

#[test]
fn wmaltsev_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let not_preorder = write(
        dir.path(),
        "x.json",
        r#"{"preorder": {"size": 2, "leq": [[true, true], [false, false]]}}"#,
    );
    assert_eq!(code(&ordcat(&["wmaltsev", "--object", &not_preorder])), 2);
    let wrong_kind = write(
        dir.path(),
        "q.json",
        r#"{"group": {"order": 1, "op": [[0]], "cone": [0]}}"#,
    );
    assert_eq!(code(&ordcat(&["wmaltsev", "--object", &wrong_kind])), 2);
    assert_eq!(
        code(&ordcat(&["wmaltsev", "--object", "/nonexistent/file.json"])),
        2
    );
}
