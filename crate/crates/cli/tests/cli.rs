//! End-to-end command tests against the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn holant() -> Command {
    Command::new(env!("CARGO_BIN_EXE_holant"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

const EQ_LOOP: &str = r#"{
  "functions": [{"name": "eq", "arity": 2, "values": ["1", "0", "0", "1"]}],
  "vertices": [{"func": "eq"}],
  "edges": [[[0, 0], [0, 1]]]
}"#;

const NEQ_TRIANGLE: &str = r#"{
  "functions": [{"name": "neq", "arity": 2, "values": ["0", "1", "1", "0"]}],
  "vertices": [{"func": "neq"}, {"func": "neq"}, {"func": "neq"}],
  "edges": [[[0, 1], [1, 0]], [[1, 1], [2, 0]], [[2, 1], [0, 0]]]
}"#;

const TWO_LOOPS: &str = r#"{
  "functions": [{"name": "eq", "arity": 2, "values": ["1", "0", "0", "1"]}],
  "vertices": [{"func": "eq"}, {"func": "eq"}],
  "edges": [[[0, 0], [0, 1]], [[1, 0], [1, 1]]]
}"#;

#[test]
fn eval_prints_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    for (text, expected) in [(EQ_LOOP, "2"), (NEQ_TRIANGLE, "0"), (TWO_LOOPS, "4")] {
        let path = write(dir.path(), "net.json", text);
        let out = holant().arg("eval").arg(&path).output().unwrap();
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout(&out).trim(), expected);
    }
}

#[test]
fn eval_rejects_invalid_input_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{
  "functions": [{"name": "eq", "arity": 2, "values": ["1", "0", "0"]}],
  "vertices": [{"func": "eq"}],
  "edges": [[[0, 0], [0, 1]]]
}"#,
    );
    let out = holant().arg("eval").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json"), "message should name the file: {err}");

    let missing = dir.path().join("absent.json");
    let out = holant().arg("eval").arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_reports_labels() {
    let dir = tempfile::tempdir().unwrap();
    let neq = write(
        dir.path(),
        "neq.json",
        r#"{"functions": [{"name": "neq", "arity": 2, "values": ["0", "1", "1", "0"]}]}"#,
    );
    let out = holant().args(["analyze"]).arg(&neq).args(["--budget", "3"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["label"], "cyclic-2");
    assert_eq!(v["group_order"], 2);
    assert_eq!(v["order2_count"], 1);

    let quat = write(
        dir.path(),
        "quat.json",
        r#"{"functions": [
            {"name": "x", "arity": 2, "values": ["i", "0", "0", "-i"]},
            {"name": "y", "arity": 2, "values": ["0", "1", "-1", "0"]},
            {"name": "z", "arity": 2, "values": ["0", "i", "i", "0"]}
        ]}"#,
    );
    let out = holant().args(["analyze"]).arg(&quat).args(["--budget", "3"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["label"], "klein-four");
    assert_eq!(v["k4_count"], 1);
    assert_eq!(v["canonical"]["form"], "axis-triple");

    let jordan = write(
        dir.path(),
        "jordan.json",
        r#"{"functions": [{"name": "j", "arity": 2, "values": ["1", "1", "0", "1"]}]}"#,
    );
    let out = holant().args(["analyze"]).arg(&jordan).args(["--budget", "3"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["label"], "resolved:jordan-block");
}

#[test]
fn analyze_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let neq = write(
        dir.path(),
        "neq.json",
        r#"{"functions": [{"name": "neq", "arity": 2, "values": ["0", "1", "1", "0"]}]}"#,
    );
    let a = holant().args(["analyze"]).arg(&neq).output().unwrap();
    let b = holant().args(["analyze"]).arg(&neq).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn transform_applies_basis() {
    let dir = tempfile::tempdir().unwrap();
    let eq = write(
        dir.path(),
        "eq.json",
        r#"{"functions": [{"name": "eq", "arity": 2, "values": ["1", "0", "0", "1"]}]}"#,
    );
    let kbasis = write(
        dir.path(),
        "k.json",
        r#"{"entries": [["1", "1"], ["-i", "i"]]}"#,
    );
    let out = holant().args(["transform"]).arg(&eq).arg(&kbasis).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values: Vec<String> = v["functions"][0]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(values, vec!["0", "2", "2", "0"]);

    // identity basis reproduces the canonical print of the input
    let id = write(dir.path(), "id.json", r#"{"entries": [["1", "0"], ["0", "1"]]}"#);
    let a = holant().args(["transform"]).arg(&eq).arg(&id).output().unwrap();
    let b = holant().args(["transform"]).arg(&eq).arg(&id).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["functions"][0]["values"][0], "1");

    // orthogonality check rejects the K basis
    let out = holant()
        .args(["transform"])
        .arg(&eq)
        .arg(&kbasis)
        .arg("--check-orthogonal")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // and accepts a rational rotation, sampling invariance
    let rot = write(
        dir.path(),
        "rot.json",
        r#"{"entries": [["3/5", "4/5"], ["4/5", "-3/5"]]}"#,
    );
    let out = holant()
        .args(["transform"])
        .arg(&eq)
        .arg(&rot)
        .arg("--check-orthogonal")
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn decompose_and_structure_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let product = write(
        dir.path(),
        "product.json",
        r#"{"functions": [{"name": "p", "arity": 4,
            "values": ["0","0","0","0","0","1","1","0","0","1","1","0","0","0","0","0"]}]}"#,
    );
    let out = holant().args(["decompose"]).arg(&product).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"][0]["verdict"], "decomposable");

    let genuine = write(
        dir.path(),
        "genuine.json",
        r#"{"functions": [{"name": "g", "arity": 4,
            "values": ["0","0","0","0","0","1","i","0","0","i","1","0","0","0","0","0"]}]}"#,
    );
    let out = holant().args(["decompose"]).arg(&genuine).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"][0]["verdict"], "genuine");

    // support pattern of a diagonal product
    let antelope = write(
        dir.path(),
        "antelope.json",
        r#"{"functions": [{"name": "a", "arity": 4,
            "values": ["1","0","0","0","0","0","0","0","0","0","0","0","0","0","0","2"]}]}"#,
    );
    let out = holant().args(["structure", "support"]).arg(&antelope).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // support {0000, 1111} fits no pattern
    assert_eq!(v["verdict"], "other");

    let ratio = write(
        dir.path(),
        "ratio.json",
        r#"{"functions": [{"name": "q", "arity": 2, "values": ["1", "2", "2", "1"]}]}"#,
    );
    let out = holant()
        .args(["structure", "ratio-lemma"])
        .arg(&ratio)
        .args(["--k", "2"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "equal-pairs");
}

#[test]
fn field_conductor_override() {
    // a thirteenth root of unity does not fit the default session field
    // (lcm(24, 13) = 312 > 240) but works when the session starts at 13
    let dir = tempfile::tempdir().unwrap();
    let net = write(
        dir.path(),
        "z13.json",
        r#"{
  "functions": [{"name": "u", "arity": 1, "values": ["zeta(13,1)", "zeta(13,12)"]}],
  "vertices": [{"func": "u"}, {"func": "u"}],
  "edges": [[[0, 0], [1, 0]]]
}"#,
    );
    let out = holant().arg("eval").arg(&net).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = holant()
        .arg("eval")
        .arg(&net)
        .env("HOLANT_FIELD_N", "13")
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    // zeta(13,1)^2 + zeta(13,12)^2 printed exactly
    assert_eq!(stdout(&out).trim(), "zeta(13,2) + zeta(13,11)");

    let out = holant()
        .arg("eval")
        .arg(&net)
        .args(["--field-n", "13"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn verify_suites_run() {
    let out = holant()
        .args(["verify", "--suite", "k-identities", "--suite", "q-selfloop"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pass  k-identities"));
    assert!(text.contains("pass  q-selfloop"));

    let out = holant().args(["verify", "--suite", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
