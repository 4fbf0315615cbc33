//! The binary end to end, judged by exit codes and JSON payloads.

use std::process::{Command, Output};

fn latcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_reports_holds_and_witnesses() {
    let o = latcomp(&["check", "--algebra", "m3p", "--formula", "W"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds"));
    let o = latcomp(&["check", "--algebra", "m4p", "--formula", "W", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["witness"]["x"], "a_0");
    assert_eq!(v["witness"]["y"], "a_2");
}

#[test]
fn free_algebra_on_one_generator() {
    let o = latcomp(&["free", "--n", "3", "--k", "1", "--verify", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 20);
    assert_eq!(v["isomorphic_to_product"], true);
}

#[test]
fn usage_input_and_budget_errors() {
    let o = latcomp(&["verify-paper", "--scope", "s9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
    assert_eq!(
        latcomp(&["report", "--algebra", "H7"]).status.code(),
        Some(3)
    );
    let o = latcomp(&[
        "check",
        "--algebra",
        "m6p",
        "--formula",
        "Mn",
        "--n",
        "6",
        "--budget",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(latcomp(&["--help"]).status.code(), Some(0));
}

#[test]
fn algebra_files_round_trip_through_construct() {
    let dir = std::env::temp_dir().join(format!("latcomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = latcomp(&[
        "construct",
        "product",
        "--algebra",
        "m3p",
        "--other",
        "bool1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let path = dir.join("m3x2.json");
    std::fs::write(&path, v["algebra"].to_string()).unwrap();
    let o = latcomp(&[
        "iso",
        "--algebra-file",
        path.to_str().unwrap(),
        "--other",
        "H1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = latcomp(&["subuniverses", "--algebra-file", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("3 subuniverses"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn congruences_and_si() {
    let o = latcomp(&["con", "--algebra", "H1"]);
    assert!(stdout(&o).starts_with("4 congruences"));
    let o = latcomp(&["si", "--algebra", "H2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["subdirectly_irreducible"], true);
    let o = latcomp(&[
        "quotient",
        "--algebra",
        "H1",
        "--congruence",
        r#"{"blocks": [[0,1,2,3,4],[5,6,7,8,9]]}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("quotient: 2 elements"));
}
