use std::process::Command;

use wpbailey::bank::{find, Specialization};
use wpbailey::verify::{random_spec, verify, verify_with, VerifyOptions};
use wpbailey::{bank, Mono, PairKind};
use wpbailey_cli::{write_report, RunConfig};

fn wpverify(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wpverify"))
        .args(args)
        .env_remove("WPVERIFY_ORDER")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn records(path: &std::path::Path) -> Vec<serde_json::Value> {
    std::fs::read_to_string(path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn list_shows_every_case() {
    let (code, out, _) = wpverify(&["--list"]);
    assert_eq!(code, 0);
    for case in bank() {
        assert!(out.lines().any(|l| l.starts_with(case.id) && l.contains(case.equation)), "{}", case.id);
    }
}

#[test]
fn thm1_three_seeds() {
    let (code, out, _) = wpverify(&["--identity", "THM1", "--order", "30", "--seeds", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS") && l.contains("THM1")).count(), 3);
}

#[test]
fn phi4_at_fifty() {
    let (code, out, _) = wpverify(&["--identity", "PHI4", "--order", "50"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn fault_exits_one_with_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let (code, _, _) = wpverify(&[
        "--identity", "THM1", "--order", "25", "--seeds", "1", "--inject-fault", "20", "--report", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let recs = records(&path);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["status"], "FAIL");
    assert_eq!(recs[0]["firstMismatchExp"], 21);
    assert!(recs[0]["lhsCoeff"].as_str().unwrap().contains('/'));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["--order", "3"][..],
        &["--seeds", "0"],
        &["--identity", "NOPE"],
        &["--pair", "bogus"],
        &["--identity", "PHI4", "--pair", "unit"],
        &["--jobs", "0"],
        &["--frobnicate"],
    ] {
        let (code, _, err) = wpverify(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let path = dir.path().join(name);
        let (code, _, _) = wpverify(&[
            "--identity", "COR-C1,SUMID,PSI26,LAMB1", "--seeds", "2", "--no-timing", "--jobs", jobs, "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.jsonl", "1"), run("b.jsonl", "3"));
}

#[test]
fn env_sets_default_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_wpverify"))
        .args(["--identity", "SUMID", "--seeds", "1", "--report", path.to_str().unwrap()])
        .env("WPVERIFY_ORDER", "12")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(records(&path)[0]["order"], 12);
}

#[test]
fn fail_fast_stops_early() {
    let cfg = RunConfig {
        identities: vec!["SUMID".into(), "PSI26".into()],
        fail_fast: true,
        inject_fault: Some(10),
        jobs: Some(1),
        ..RunConfig::default()
    };
    let reports = wpbailey_cli::run(&cfg).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(wpbailey_cli::exit_code(&reports), 1);
}

#[test]
fn record_fields() {
    let rs = find("COR-RS").unwrap();
    let skipped = verify(&rs, &Specialization::new(Some(PairKind::Trivial)).with("k", Mono::one()), 10);
    let chi = find("CHI3").unwrap();
    let failed = verify_with(&chi, &random_spec(&chi, 1).unwrap(), 10, VerifyOptions { inject_fault: Some(1) });
    let sumid = find("SUMID").unwrap();
    let passed = verify(&sumid, &random_spec(&sumid, 1).unwrap(), 10);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    write_report(&path, &[skipped, failed, passed]).unwrap();
    let recs = records(&path);
    assert_eq!(recs[0]["status"], "SKIPPED");
    assert_eq!(recs[0]["reason"], "k-equals-1");
    assert_eq!(recs[1]["status"], "FAIL");
    // chi3 lives in t with q = t^2; coefficients are field elements
    assert!(recs[1]["firstMismatchExp"].as_i64().is_some());
    assert_eq!(recs[2]["status"], "PASS");
    for key in ["firstMismatchExp", "lhsCoeff", "rhsCoeff"] {
        assert!(recs[2][key].is_null());
    }
    assert!(recs[2]["termCounts"].is_object());
}

#[test]
fn report_io_error_names_path() {
    let err = write_report(std::path::Path::new("/nonexistent/dir/r.jsonl"), &[]).unwrap_err();
    assert!(err.to_string().contains("/nonexistent/dir/r.jsonl"));
}
