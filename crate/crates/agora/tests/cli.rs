//! End-to-end runs of the installed binary: output bytes and exit codes.

use std::io::Write;
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_agora");
const GOLDEN: &str = include_str!("golden/risk-x.trace");

fn example_path() -> std::path::PathBuf {
    let mut file = tempfile::NamedTempFile::with_suffix(".agora").unwrap();
    file.write_all(agora::EXAMPLE_SCRIPT.as_bytes()).unwrap();
    let (_, path) = file.keep().unwrap();
    path
}

#[test]
fn example_subcommand_prints_the_bundled_script() {
    let out = Command::new(BIN).arg("example").output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), agora::EXAMPLE_SCRIPT);
}

#[test]
fn replay_matches_golden_bytes_and_exits_zero() {
    let path = example_path();
    let out = Command::new(BIN).arg("replay").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), GOLDEN);
}

#[test]
fn validate_clean_script_exits_zero() {
    let path = example_path();
    let out = Command::new(BIN).arg("validate").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("verdict: legal"));
}

#[test]
fn validate_mutated_script_exits_one() {
    let mutated: String = agora::EXAMPLE_SCRIPT
        .lines()
        .filter(|l| !l.starts_with("M3:"))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut file = tempfile::NamedTempFile::with_suffix(".agora").unwrap();
    file.write_all(mutated.as_bytes()).unwrap();
    let out = Command::new(BIN).arg("validate").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("M4: REJECTED obligation-violation"), "{stdout}");
}

#[test]
fn parse_error_exits_two() {
    let mut file = tempfile::NamedTempFile::with_suffix(".agora").unwrap();
    file.write_all(b"participant P1\nM1: frobnicate P1 phi\n").unwrap();
    let out = Command::new(BIN).arg("validate").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn query_reports_the_final_verdict_on_phi() {
    let path = example_path();
    let out = Command::new(BIN)
        .args(["query"])
        .arg(&path)
        .arg("phi")
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("modality: Plausible"), "{stdout}");
    assert!(stdout.contains("valuation: 0"), "{stdout}");
    assert!(stdout.contains("rebutted by: M8"), "{stdout}");
}

#[test]
fn check_theorem2_holds_on_the_example() {
    let path = example_path();
    let out = Command::new(BIN).arg("check-theorem2").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("equivalence holds"));
}

#[test]
fn repl_accepts_piped_moves() {
    let mut child = Command::new(BIN)
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"participant P1\ntrack phi\nassert P1 (phi, Conf)\nshow\nquit\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("CS(P1): (phi, Conf)"), "{stdout}");
}

#[test]
fn strict_flag_changes_the_verdict() {
    let path = example_path();
    let out = Command::new(BIN)
        .args(["validate", "--strict-2-1"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("M6: REJECTED"));
}
