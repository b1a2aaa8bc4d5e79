//! End-to-end checks of the command-line contract: JSON shapes, exit codes,
//! scene loading, and the negative controls.

use std::io::Write;
use std::process::{Command, Output};

fn qmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmlab"))
        .args(args)
        .output()
        .expect("run qmlab")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn eval_prints_exact_values() {
    let out = qmlab(&["--n", "9", "eval", "aarnes", "border_ring"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], "1");
    assert_eq!(doc["value_float"], 1.0);
    assert_eq!(doc["grid"], "n=9, adjacency=8/4");

    let out = qmlab(&["--n", "9", "eval", "aarnes", "empty"]);
    assert_eq!(stdout_json(&out)["value"], "0");

    let out = qmlab(&["--n", "9", "eval", "mix_pq", "disk_p"]);
    assert_eq!(stdout_json(&out)["value"], "1/2");
}

#[test]
fn integrate_builtin_constants() {
    let out = qmlab(&["--n", "9", "integrate", "three_point", "constant:0.5"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["value"], 0.5);

    let out = qmlab(&["--n", "9", "integrate", "aarnes", "pyramid_plus_plane"]);
    assert_eq!(stdout_json(&out)["value"], 1.0);
}

#[test]
fn unknown_names_exit_2() {
    assert_eq!(
        qmlab(&["--n", "9", "eval", "nope", "empty"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qmlab(&["--n", "9", "eval", "aarnes", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qmlab(&["--n", "9", "integrate", "aarnes", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qmlab(&["--n", "9", "verify", "--suite", "nope"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn broken_scene_exits_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    // mixture weights do not sum to 1
    write!(
        f,
        r#"{{
  "grid": {{"n": 9, "marked_points": [[0.25,0.25],[0.75,0.25],[0.5,0.75]]}},
  "measures": {{
    "d": {{"type": "dirac", "at": "center"}},
    "bad": {{"type": "mixture", "weights": [0.5, 0.6], "parts": ["d", "d"]}}
  }}
}}"#
    )
    .unwrap();
    let out = qmlab(&["--scene", f.path().to_str().unwrap(), "eval", "d", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("weights"), "stderr: {err}");
}

#[test]
fn negative_control_scene_fails_verification() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{
  "grid": {{"n": 9, "marked_points": [[0.25,0.25],[0.75,0.25],[0.5,0.75]]}},
  "measures": {{
    "aarnes": {{"type": "aarnes"}},
    "dirac:center": {{"type": "dirac", "at": "center"}}
  }},
  "transforms": {{
    "broken": {{"type": "constant_empty"}}
  }}
}}"#
    )
    .unwrap();
    let out = qmlab(&[
        "--scene",
        f.path().to_str().unwrap(),
        "verify",
        "--suite",
        "transform-axioms",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    let reports = doc["reports"].as_array().unwrap();
    let broken = reports
        .iter()
        .find(|r| r["check"] == "transform.axioms.broken")
        .expect("broken transform report");
    assert_eq!(broken["status"], "fail");
    assert_eq!(broken["values"]["full_space"], false);
}

#[test]
fn scene_masks_and_custom_images() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{
  "grid": {{"n": 3}},
  "images": {{
    "corner": {{"kind": "closed", "mask": ["100", "000", "000"]}}
  }},
  "measures": {{"aarnes": {{"type": "aarnes"}}}}
}}"#
    )
    .unwrap();
    let out = qmlab(&[
        "--scene",
        f.path().to_str().unwrap(),
        "eval",
        "aarnes",
        "corner",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["value"], "0");
}

#[test]
fn counterexample_reports_none_for_point_masses() {
    let out = qmlab(&[
        "--n",
        "9",
        "--budget",
        "200",
        "counterexample",
        "dirac:center",
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["found"], false);
}

#[test]
fn counterexample_emits_masks() {
    let out = qmlab(&["--n", "9", "counterexample", "aarnes"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["found"], true);
    assert_eq!(doc["candidates_tried"], 1);
    let mask = doc["witness"]["a"].as_str().unwrap();
    assert!(mask.starts_with("kind: closed\n"));
    assert_eq!(mask.lines().count(), 10);
    // stderr carries the human-readable masks
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("witness after 1 candidates"));
}

#[test]
fn json_flag_duplicates_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = qmlab(&[
        "--n",
        "9",
        "--json",
        path.to_str().unwrap(),
        "eval",
        "aarnes",
        "border_ring",
    ]);
    assert!(out.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        file.trim_end(),
        String::from_utf8_lossy(&out.stdout).trim_end()
    );
}

#[test]
fn verify_suites_pass_on_the_default_scene() {
    for suite in ["measure-axioms", "transform-axioms"] {
        let out = qmlab(&["--n", "13", "verify", "--suite", suite]);
        assert!(
            out.status.success(),
            "suite {suite}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc = stdout_json(&out);
        assert_eq!(doc["summary"]["fail"], 0, "suite {suite}");
    }
}
