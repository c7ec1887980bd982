use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic-ext"))
        .args(args)
        .env_remove("MOTIVIC_EXT_CACHE")
        .output()
        .unwrap()
}

fn cells(out: &Output) -> Vec<(u64, i64, i64, u64)> {
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    doc["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["f"].as_u64().unwrap(), c["m"].as_i64().unwrap(), c["n"].as_i64().unwrap(), c["dim"].as_u64().unwrap()))
        .collect()
}

#[test]
fn real_chart_json() {
    let out = run(&["ext", "--side", "real", "--prime", "3", "--max-f", "1", "--max-total", "4", "--format", "json"]);
    assert!(out.status.success());
    let cells = cells(&out);
    for expected in [(0, 0, 0, 1), (1, 1, 0, 1), (1, 2, 2, 1)] {
        assert!(cells.contains(&expected), "{expected:?} missing from {cells:?}");
    }
}

#[test]
fn unit_only() {
    let out = run(&["ext", "--max-total", "0", "--max-f", "0", "--format", "json"]);
    assert_eq!(cells(&out), vec![(0, 0, 0, 1)]);
}

#[test]
fn c2_has_negative_theta() {
    let out = run(&["ext", "--side", "c2", "--max-f", "0", "--max-total", "3", "--format", "json"]);
    assert!(cells(&out).contains(&(0, -2, 2, 1)));
    let real = run(&["ext", "--side", "real", "--max-f", "0", "--max-total", "3", "--format", "json"]);
    assert!(!cells(&real).contains(&(0, -2, 2, 1)));
}

#[test]
fn comparison_fields() {
    let out = run(&["ext", "--compare", "--max-f", "1", "--max-total", "2", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cell = doc["cells"].as_array().unwrap().iter().find(|c| c["f"] == 1 && c["m"] == -1 && c["n"] == 2).unwrap();
    assert_eq!(cell["dim"], 0);
    assert_eq!(cell["map_rank"], 0);
    assert_eq!(cell["verdict"], "injection-not-surjection");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["ext", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(run(&["ext", "--format", "pdf"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["ext", "--side", "c2", "--compare"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "cobar-d2", "--prime", "3", "--prime", "5"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "split"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["suite"], "split");
    assert_eq!(report["summary"]["failed"], 0);
    let flagged = report["claims"].as_array().unwrap().iter().find(|c| c["id"] == "e-plus-squared").unwrap();
    assert!(flagged["note"].as_str().unwrap().contains("sign flag"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS e-plus-squared"));

    let out = run(&["verify", "lemma-coarse", "--prime", "3", "--max-total", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let eq = report["claims"].as_array().unwrap().iter().find(|c| c["id"] == "coarse-equality/p=3").unwrap();
    assert!(eq["note"].as_str().unwrap().contains("τ0"));
}

#[test]
fn failing_claim_exits_1() {
    // τ0 has total degree 1, so a degree-0 window cannot witness equality
    let out = run(&["verify", "lemma-coarse", "--prime", "3", "--max-total", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["summary"]["failed"], 1);
    let failed = report["claims"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    assert_eq!(failed["id"], "coarse-equality/p=3");
    assert!(failed["witness"].is_string());
}

#[test]
fn cache_env_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_motivic-ext"))
        .args(["ext", "--max-f", "1", "--max-total", "2", "--cache", flag_dir.path().to_str().unwrap()])
        .env("MOTIVIC_EXT_CACHE", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.path().join("1/real/3/ext_cell").exists());
    assert!(!flag_dir.path().join("1").exists());
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/chart.svg");
    let args = ["ext", "--max-f", "2", "--max-total", "6", "--format", "svg"];
    let stdout = run(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(run(&with_out).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}
