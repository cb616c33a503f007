use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nefhodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nefhodge")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = nefhodge(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p = write(dir, name, std::str::from_utf8(&out.stdout).unwrap());
    p.to_string_lossy().into_owned()
}

const DIAMOND: &str = r#"{"schemaVersion": "1", "dim": 2, "vertices": [["1","0"],["0","1"],["-1","0"],["0","-1"]]}"#;

#[test]
fn h1q_table_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "p33.json", &["gen", "pd", "3", "3"]);
    let out = nefhodge(&["hodge", "h1q", &p, "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["h^{2,1}", "73"]), "{text}");
}

#[test]
fn dualize_twice_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "p.json", &["gen", "pd", "2", "2", "3"]);
    let d1 = generate(dir.path(), "d1.json", &["nef", "dualize", &p]);
    let d2 = generate(dir.path(), "d2.json", &["nef", "dualize", &d1]);
    assert_eq!(std::fs::read(&p).unwrap(), std::fs::read(&d2).unwrap());
    assert_ne!(std::fs::read(&p).unwrap(), std::fs::read(&d1).unwrap());
}

#[test]
fn verify_all_passes() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "p.json", &["gen", "pd", "2", "2", "3"]);
    let out = nefhodge(&["verify", "all", &p]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["allPassed"], true);
    assert_eq!(v["results"]["suites"].as_array().unwrap().len(), 8);
    assert_eq!(v["command"], "verify all");
    assert_eq!(v["inputDigest"].as_str().unwrap().len(), 64);
}

#[test]
fn polytope_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "d.json", DIAMOND);
    let dual = generate(dir.path(), "dual.json", &["poly", "dual", src.to_str().unwrap()]);
    let back = generate(dir.path(), "back.json", &["poly", "dual", &dual]);
    let again = generate(
        dir.path(),
        "again.json",
        &["poly", "dual", &generate(dir.path(), "x.json", &["poly", "dual", &back])],
    );
    assert_eq!(std::fs::read(&back).unwrap(), std::fs::read(&again).unwrap());
    assert!(std::fs::read_to_string(&back).unwrap().contains("\"schemaVersion\": \"1\""));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("q.json");
    let out = nefhodge(&["gen", "pd", "5", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let info = nefhodge(&["hodge", "hypersurface", "--format", "json", target.to_str().unwrap()]);
    assert!(!info.status.success(), "a partition file is not a polytope file");
    assert_eq!(info.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &DIAMOND.replace("\"-1\",\"0\"", "\"0.5\",\"0\""));
    let out = nefhodge(&["poly", "info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertices[2][0]"));

    let broken = write(dir.path(), "broken.json", "{\"schemaVersion\": ");
    assert_eq!(nefhodge(&["poly", "info", broken.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(nefhodge(&["poly", "info", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(nefhodge(&["frobnicate"]).status.code(), Some(1));

    let split = generate(dir.path(), "split.json", &["gen", "diamond"]);
    let out = nefhodge(&["nef", "validate", &split]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("phi_"));

    assert_eq!(nefhodge(&["gen", "pd", "1", "4"]).status.code(), Some(2));
    assert_eq!(nefhodge(&["hodge", "pd", "2", "2"]).status.code(), Some(2));

    let quartic = write(
        dir.path(),
        "quartic.json",
        r#"{"schemaVersion": "1", "dim": 3, "vertices": [["-1","-1","-1"],["3","-1","-1"],["-1","3","-1"],["-1","-1","3"]]}"#,
    );
    let out = nefhodge(&["hodge", "hypersurface", quartic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_nefhodge"))
        .args(["gen", "diamond"])
        .env("NEFHODGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hodge_pd_and_chi_reports() {
    let out = nefhodge(&["hodge", "pd", "2", "2", "2", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["wReport"]["hOneQ"], serde_json::json!([0, 65, 1, 0]));
    assert_eq!(v["results"]["vReport"]["formulaUsed"], "pdMirror");

    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "p.json", &["gen", "pd", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&nefhodge(&["hodge", "chi", &p]).stdout).unwrap();
    assert_eq!(v["results"]["chiOmega1"], -20);
    let v: serde_json::Value = serde_json::from_slice(&nefhodge(&["hodge", "e", &p]).stdout).unwrap();
    assert_eq!(v["results"]["coefficients"], serde_json::json!([1, 0, 1]));
}

#[test]
fn enumerate_and_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.json", DIAMOND);
    let v: serde_json::Value =
        serde_json::from_slice(&nefhodge(&["nef", "enumerate", d.to_str().unwrap(), "--parts", "2"]).stdout).unwrap();
    assert_eq!(v["results"]["count"], 0);
    let hl = generate(dir.path(), "hl.json", &["gen", "halflattice"]);
    let v: serde_json::Value = serde_json::from_slice(&nefhodge(&["nef", "decompose", &hl]).stdout).unwrap();
    assert_eq!(v["results"]["sublatticeIndex"], "2");
    assert_eq!(v["results"]["splitsOverZ"], false);
    let prod = generate(dir.path(), "prod.json", &["gen", "product", d.to_str().unwrap(), d.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&nefhodge(&["nef", "decompose", &prod]).stdout).unwrap();
    assert_eq!(v["results"]["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["results"]["sublatticeIndex"], "1");
}
