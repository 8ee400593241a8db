use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperholo")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const ONE_ALPHA0: &str = r#"{
  "alpha": {"re": 0.0},
  "curve": {"kind": "circle", "center": [0, 0], "radius": 1},
  "density": {"kind": "constant", "value": [[1, 0], [0, 0], [0, 0], [0, 0]]},
  "grid": {"x": [-2, 2], "y": [-2, 2], "resolution": RES}
}"#;

#[test]
fn field_grid_of_constant_density() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", &ONE_ALPHA0.replace("RES", "3"));
    let out = run(&["field", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,y,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im,mask");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 9);
    for r in rows {
        assert_eq!(r.len(), 11);
        let inside = r[0] == 0.0 && r[1] == 0.0;
        assert!((r[2] - if inside { 1.0 } else { 0.0 }).abs() < 1e-10);
        assert!(r[3..10].iter().all(|v| v.abs() < 1e-10));
        assert_eq!(r[10], 0.0);
    }
}

#[test]
fn field_masks_boundary_points_but_keeps_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", &ONE_ALPHA0.replace("RES", "5"));
    let csv = dir.path().join("out.csv");
    let out = run(&["field", &cfg, "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 25);
    let masked: Vec<&str> = text.lines().filter(|l| l.ends_with(",1")).collect();
    // (±1, 0) and (0, ±1) lie on the circle
    assert_eq!(masked.len(), 4);
    assert!(masked.iter().all(|l| l.contains("nan")));
}

#[test]
fn jump_of_constant_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", &ONE_ALPHA0.replace("RES", "3"));
    let out = run(&["jump", &cfg, "--points", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 8);
    for r in reports {
        assert!(r["residual_plus"].as_f64().unwrap() < 1e-6);
        assert!(r["residual_minus"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn malformed_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"alpha": {"re": 1}, "curve": {"kind": "triangle"}}"#);
    let out = run(&["jump", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn series_validity_gate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "big.json",
        r#"{"alpha": {"re": 5}, "curve": {"kind": "circle", "center": [0, 0], "radius": 1}, "density": {"kind": "coordinate"}}"#,
    );
    let out = run(&["certify", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
}

#[test]
fn single_claim_filter() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let md = dir.path().join("r.md");
    let out = run(&["certify", "reference", "--claim", "lemma3", "--out", json.to_str().unwrap(), "--summary", md.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
    assert_eq!(v["reports"][0]["claim"], "lemma3");
    assert!(dir.path().join("r.meta.json").exists());
    assert!(std::fs::read_to_string(md).unwrap().contains("| lemma3 |"));
    assert_eq!(run(&["certify", "reference", "--claim", "lemma9"]).status.code(), Some(2));
}

#[test]
fn kernel_eval_prints_theta() {
    let out = run(&["kernel-eval", "--alpha-re", "1", "--x", "1", "--y", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["theta"][0].as_f64().unwrap() - 0.0220642).abs() < 1e-6);
    assert!((v["theta"][1].as_f64().unwrap() + 0.1912994).abs() < 1e-6);
    assert_eq!(run(&["kernel-eval", "--x", "0", "--y", "0"]).status.code(), Some(2));
}
