use std::path::PathBuf;
use std::process::{Command, Output};

use logcoh_cli::SceneFile;
use serde_json::Value;

fn scene(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scenes").join(name).to_string_lossy().into_owned()
}

fn logcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logcoh")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn dims(v: &Value, side: usize) -> Vec<u64> {
    v["results"][side]["dims"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect()
}

#[test]
fn compare_torus() {
    let out = logcoh(&["compare", &scene("torus2.scene"), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "compare");
    assert_eq!(dims(&v, 0), [1, 2, 1]);
    assert_eq!(dims(&v, 1), [1, 2, 1]);
    assert_eq!(v["results"][1]["side"], "betti");
    assert!(v["scene"]["digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v["meta"]["wall_time_ms"].is_number());
}

#[test]
fn corrupted_expectation_fails() {
    let out = logcoh(&["compare", &scene("torus2_corrupt.scene"), "--quiet", "--no-meta"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["counterexample"], "q=1: 2 vs 3");
}

#[test]
fn errors_exit_two() {
    let out = logcoh(&["cohomology", &scene("unit.scene"), "--quiet"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("subscheme.monomials"));
    assert_eq!(logcoh(&["betti", "/nonexistent.scene", "--quiet"]).status.code(), Some(2));
    assert_eq!(logcoh(&["homotopy-check", "--rank", "9", "--quiet"]).status.code(), Some(2));
    assert_eq!(logcoh(&["cech-check", "--quiet"]).status.code(), Some(2));
}

#[test]
fn homotopy_check() {
    let out = logcoh(&["homotopy-check", "--rank", "2", "--order", "3", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).get("scene").is_none());
}

#[test]
fn every_command_runs() {
    let cases = [
        ("cohomology", "quadric.scene"),
        ("betti", "axes.scene"),
        ("compare", "fat_point.scene"),
        ("cech-check", "line.scene"),
        ("residue-check", "ncd3.scene"),
        ("poin05-check", "plane_face.scene"),
        ("stalk-poincare", "torus2.scene"),
    ];
    for (cmd, file) in cases {
        let out = logcoh(&[cmd, &scene(file), "--quiet", "--no-meta"]);
        assert_eq!(out.status.code(), Some(0), "{cmd} {file}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn no_meta_is_deterministic() {
    let args = ["residue-check", &scene("ncd3.scene"), "--quiet", "--no-meta"];
    let a = logcoh(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_logcoh")).args(args).env("LOGCOH_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("meta").is_none());
}

#[test]
fn flags() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = logcoh(&[
        "cohomology",
        &scene("torus2.scene"),
        "--max-q",
        "1",
        "--truncation",
        "8",
        "--window",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebraic"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(dims(&v, 0), [1, 2]);
    let quiet = logcoh(&["cohomology", &scene("torus2.scene"), "--quiet"]);
    assert!(quiet.stderr.is_empty());
}

#[test]
fn flag_overrides_change_the_digest() {
    let a = json(&logcoh(&["cohomology", &scene("torus2.scene"), "--quiet"]));
    let b = json(&logcoh(&["cohomology", &scene("torus2.scene"), "--quiet", "--window", "3"]));
    assert_ne!(a["scene"]["digest"], b["scene"]["digest"]);
}

#[test]
fn fixture_files_round_trip() {
    for entry in std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scenes")).unwrap() {
        let f = SceneFile::read(&entry.unwrap().path()).unwrap();
        let again = SceneFile::parse(&f.serialize()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.digest(), again.digest());
    }
}
