use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_busemann-lab"))
}

#[test]
fn text_summary_on_stdout() {
    let out = bin().args(["--suite", "scissors", "--format", "text"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite scissors: 5/5 passed"));
    assert!(text.contains("scissors[hyperbolic]"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"suite": "tapes"}"#).unwrap();
    let out = bin().arg("--config").arg(&cfg).args(["--suite", "grasshopper", "--seed", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "grasshopper");
    assert_eq!(v["config"]["seed"], 4);
}

#[test]
fn usage_and_io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"suite": "tapes", "colour": "red"}"#).unwrap();
    for args in [vec!["--config", bad.to_str().unwrap()], vec![], vec!["--suite", "tapes", "--tol", "abc"]] {
        assert_eq!(bin().args(&args).output().unwrap().status.code(), Some(2), "{args:?}");
    }
    let out = bin().args(["--suite", "tapes", "--out", "/nonexistent-dir/r.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
