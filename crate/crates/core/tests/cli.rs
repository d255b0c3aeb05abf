use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn csd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csd"))
        .args(args)
        .env_remove("CSD_OUTPUT_DIR")
        .output()
        .expect("csd runs")
}

fn w2() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/w2.json")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn depth_of_stored_witness() {
    let out = csd(&["depth", "-i", w2().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["depth"], 5);

    let csv = csd(&["depth", "-i", w2().to_str().unwrap(), "--format", "csv"]);
    let text = stdout(&csv);
    assert_eq!(text.lines().next(), Some("s1,s2,s3"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn trace_octa_check_and_extract_succeed() {
    let input = w2();
    let input = input.to_str().unwrap();
    for args in [
        vec!["trace", "-i", input],
        vec!["octa-check", "-i", input],
        vec!["extract", "-i", input],
    ] {
        let out = csd(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn random_output_feeds_depth_via_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_csd"))
        .args(["random", "--d", "3", "--seed", "9", "-o", "r.json"])
        .env("CSD_OUTPUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let path = dir.path().join("r.json");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"seed\": 9"));
    let out = csd(&["depth", "-i", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["depth"].as_u64().unwrap() >= 8);
}

#[test]
fn search_verdicts_and_exit_codes() {
    let none = csd(&[
        "search-nu",
        "--d",
        "2",
        "--max-size",
        "4",
        "-q",
        "--format",
        "json",
    ]);
    assert_eq!(none.status.code(), Some(0));
    assert!(stdout(&none).contains("\"no-system\""));

    let budget = csd(&[
        "search-nu",
        "--d",
        "3",
        "--max-size",
        "8",
        "--node-budget",
        "10",
        "-q",
    ]);
    assert_eq!(budget.status.code(), Some(1));
}

#[test]
fn checkpoint_resume_gives_same_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let ck = ck.to_str().unwrap();
    let args = [
        "search-nu",
        "--d",
        "2",
        "--max-size",
        "5",
        "-q",
        "--format",
        "json",
        "--checkpoint",
        ck,
    ];
    let first: serde_json::Value = serde_json::from_str(&stdout(&csd(&args))).unwrap();
    let again: serde_json::Value = serde_json::from_str(&stdout(&csd(&args))).unwrap();
    assert_eq!(first["outcome"], again["outcome"]);
    assert_eq!(first["nodes"], again["nodes"]);
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"d\": 2, \"mode\": \"full\", \"classes\": [[[\"1\"]]]}",
    )
    .unwrap();
    assert_eq!(
        csd(&["depth", "-i", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        csd(&["depth", "-i", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(csd(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = csd(&["--selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn bounds_table_for_d4() {
    let out = csd(&["bounds", "--d", "4", "--format", "csv"]);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[1], "13");
    assert_eq!(cells[6], "12");
}
