//! End-to-end tests of the binary: exit codes, file outputs, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seedforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("seedforge-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn usage_error_for_unknown_group() {
    let out = run(&["verify-lie", "--group", "H4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("H4"), "{err}");
}

#[test]
fn verify_lie_a1_passes() {
    let out = run(&["verify-lie", "--group", "A1", "--trials", "5"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS jacobi_identity"), "{text}");
    assert!(text.contains("all checks passed"), "{text}");
}

#[test]
fn verify_lie_writes_report_and_brackets() {
    let dir = tmpdir("report");
    let report = dir.join("a2.json");
    let brackets = dir.join("a2-brackets.txt");
    let out = run(&[
        "verify-lie",
        "--group",
        "A2",
        "--trials",
        "5",
        "--out",
        report.to_str().unwrap(),
        "--dump-brackets",
        brackets.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = std::fs::read_to_string(&report).unwrap();
    assert!(json.contains("\"passed\": true"));
    let table = std::fs::read_to_string(&brackets).unwrap();
    assert!(table.contains("# chevalley bracket table A2"));
}

#[test]
fn seed_curve_accepts_g2_and_is_deterministic() {
    let dir = tmpdir("seed");
    let out1 = dir.join("a.json");
    let out2 = dir.join("b.json");
    for out in [&out1, &out2] {
        let res = run(&[
            "seed-curve",
            "--group",
            "G2",
            "--ell",
            "29",
            "--seed",
            "0",
            "--sample-bound",
            "500",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            res.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&res.stderr)
        );
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(
        a, b,
        "identical config and seed must give byte-identical certificates"
    );
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("\"p0\": \"3\""));
    assert!(text.contains("\"p1\": \"5\""));
    assert!(text.contains("\"accepted\": true"));
}

#[test]
fn seed_curve_rejects_excluded_and_small_primes() {
    let out = run(&["seed-curve", "--group", "E8", "--ell", "229"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("229"), "{err}");

    let out = run(&["seed-curve", "--group", "G2", "--ell", "23"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("4h-1 = 23"), "{err}");
}

#[test]
fn check_hypotheses_table_and_verdicts() {
    let out = run(&["check-hypotheses"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("E6: h = 12"), "{text}");
    assert!(text.contains("first admissible 71"), "{text}");
    assert!(text.contains("excluded: 229 269 367"), "{text}");

    let ok = run(&["check-hypotheses", "--group", "G2", "--ell", "29"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["check-hypotheses", "--group", "G2", "--ell", "23"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn selmer_sim_exhaustive_f2_dims_8() {
    let out = run(&[
        "selmer-sim",
        "--field",
        "2",
        "--dims",
        "8",
        "--trials",
        "25",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("25 instances"), "{text}");
    assert!(
        text.contains("verified against the exhaustive oracle"),
        "{text}"
    );
}

#[test]
fn selmer_sim_f3_dims_10_and_guards() {
    let out = run(&[
        "selmer-sim",
        "--field",
        "3",
        "--dims",
        "10",
        "--trials",
        "40",
        "--seed",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let guard = run(&["selmer-sim", "--field", "2", "--dims", "20"]);
    assert_eq!(guard.status.code(), Some(2));
    let field_guard = run(&["selmer-sim", "--field", "7", "--dims", "4"]);
    assert_eq!(field_guard.status.code(), Some(2));
}

#[test]
fn out_dir_env_is_honored() {
    let dir = tmpdir("envout");
    let res = bin()
        .env("SEEDFORGE_OUT_DIR", &dir)
        .args([
            "seed-curve",
            "--group",
            "G2",
            "--ell",
            "29",
            "--sample-bound",
            "200",
        ])
        .output()
        .unwrap();
    assert_eq!(
        res.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    assert!(dir.join("seed-G2-29-s0.json").exists());
}
