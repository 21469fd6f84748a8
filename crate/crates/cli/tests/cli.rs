//! End-to-end command tests against the compiled binary: golden outputs,
//! exit codes, the enumeration cap (flag and environment), and report
//! determinism across thread counts.

use std::io::Write;
use std::process::Command;

fn sqfd() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sqfd"));
    // Keep tests hermetic regardless of the caller's environment.
    cmd.env_remove("SQFD_ORACLE_CAP");
    cmd
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn expect_line(args: &[&str], want: &str) {
    let (code, stdout, stderr) = run(sqfd().args(args));
    assert_eq!(code, 0, "sqfd {args:?} failed: {stderr}");
    assert_eq!(stdout.trim_end(), want, "sqfd {args:?}");
}

#[test]
fn coeff_golden_value_both_routes() {
    expect_line(&["coeff", "--N", "4", "--m", "3", "--k", "4"], "19");
    expect_line(&["coeff", "--N", "4", "--m", "3", "--k", "4", "--ie"], "19");
    expect_line(
        &["coeff", "--N", "4", "--m", "3", "--k", "4", "--format", "json"],
        "\"19\"",
    );
    expect_line(&["coeff", "--N", "-2", "--m", "3", "--k", "0"], "0");
}

#[test]
fn coeff_rejects_bad_run_length() {
    let (code, _, stderr) = run(sqfd().args(["coeff", "--N", "4", "--m", "0", "--k", "1"]));
    assert_eq!(code, 2);
    assert!(stderr.contains("m must be >= 1"), "{stderr}");
}

#[test]
fn alpha_vectors() {
    expect_line(
        &["alpha", "--family", "path-quotient", "--n", "7", "--m", "3"],
        "1 7 21 30 19 3 0 0",
    );
    expect_line(
        &["alpha", "--family", "cycle-rel", "--n", "5", "--m", "3"],
        "0 0 0 2 1 0",
    );
    expect_line(
        &[
            "alpha", "--family", "cycle-rel", "--n", "8", "--m", "3", "--variant", "printed",
        ],
        "0 0 0 2 5 2 0 0 0",
    );
    expect_line(
        &[
            "alpha", "--family", "path-quotient", "--n", "7", "--m", "3", "--format", "json",
        ],
        r#"["1","7","21","30","19","3","0","0"]"#,
    );
}

#[test]
fn alpha_rejects_invalid_family() {
    let (code, _, stderr) = run(sqfd().args(["alpha", "--n", "3", "--m", "5"]));
    assert_eq!(code, 2);
    assert!(stderr.contains("n >= m >= 1"), "{stderr}");

    let (code, _, stderr) = run(sqfd().args(["alpha", "--family", "general", "--n", "4", "--m", "2"]));
    assert_eq!(code, 2);
    assert!(stderr.contains("--spec"), "{stderr}");

    let (code, _, stderr) = run(sqfd().args(["alpha", "--m", "2"]));
    assert_eq!(code, 2);
    assert!(stderr.contains("--n is required"), "{stderr}");
}

#[test]
fn beta_and_qdepth() {
    expect_line(
        &[
            "beta", "--family", "path-quotient", "--n", "7", "--m", "3", "--d", "4",
        ],
        "1 3 6 5 4",
    );
    expect_line(
        &["qdepth", "--family", "path-quotient", "--n", "7", "--m", "3"],
        "4",
    );
    expect_line(
        &["qdepth", "--family", "cycle-rel", "--n", "5", "--m", "3"],
        "3",
    );
    let (code, _, stderr) = run(sqfd().args([
        "beta", "--family", "path-quotient", "--n", "7", "--m", "3", "--d", "9",
    ]));
    assert_eq!(code, 2);
    assert!(stderr.contains("out of range"), "{stderr}");
}

#[test]
fn vector_commands_reject_csv() {
    let (code, _, stderr) = run(sqfd().args([
        "alpha", "--family", "path-quotient", "--n", "5", "--m", "2", "--format", "csv",
    ]));
    assert_eq!(code, 2);
    assert!(stderr.contains("only available for sweep"), "{stderr}");
}

#[test]
fn bounds_table() {
    let (code, stdout, _) = run(sqfd().args(["bounds", "--n", "5", "--m", "3"]));
    assert_eq!(code, 0);
    assert!(
        stdout.contains("cycle-rel n=5 m=3 variant=corrected phi=3 depth>=4 sdepth>=4 qdepth=3"),
        "{stdout}"
    );
    assert!(
        stdout.contains("path-quotient n=5 m=3 phi=3 depth=3 sdepth>=3 sdepth<=3 qdepth=3"),
        "{stdout}"
    );

    let (code, stdout, _) = run(sqfd().args(["bounds", "--n", "5", "--m", "3", "--format", "json"]));
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert_eq!(rows[0]["module"], "path-quotient");
    assert_eq!(rows[3]["depth"], serde_json::json!({"at_least": 4}));
}

#[test]
fn oracle_named_family_and_spec_file() {
    expect_line(
        &["oracle", "--family", "cycle-rel", "--n", "5", "--m", "3"],
        "0 0 0 2 1 0",
    );

    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"n": 4, "gens_I": [], "gens_J": [[1,2],[2,3],[3,4]]}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    expect_line(&["oracle", "--spec", path], "0 0 3 4 1");
    // The same spec drives the transform commands.
    expect_line(&["qdepth", "--spec", path], "3");
}

#[test]
fn oracle_cap_flag_and_environment() {
    let (code, _, stderr) = run(sqfd().args([
        "oracle", "--family", "path-quotient", "--n", "26", "--m", "2",
    ]));
    assert_eq!(code, 2);
    assert!(stderr.contains("exceeds the cap 24"), "{stderr}");

    let (code, _, stderr) = run(sqfd()
        .args(["oracle", "--family", "path-quotient", "--n", "12", "--m", "2"])
        .env("SQFD_ORACLE_CAP", "10"));
    assert_eq!(code, 2);
    assert!(stderr.contains("exceeds the cap 10"), "{stderr}");

    let (code, stdout, _) = run(sqfd()
        .args([
            "oracle",
            "--family",
            "path-quotient",
            "--n",
            "12",
            "--m",
            "2",
            "--oracle-cap",
            "12",
        ])
        .env("SQFD_ORACLE_CAP", "10"));
    assert_eq!(code, 0, "flag overrides environment");
    assert!(stdout.starts_with("1 12 55"), "{stdout}");

    let (code, _, stderr) = run(sqfd()
        .args(["oracle", "--family", "path-quotient", "--n", "5", "--m", "2"])
        .env("SQFD_ORACLE_CAP", "abc"));
    assert_eq!(code, 2);
    assert!(stderr.contains("invalid SQFD_ORACLE_CAP"), "{stderr}");
}

#[test]
fn verify_reports_failures_with_exit_one() {
    let (code, stdout, _) = run(sqfd().args(["verify", "--all", "--n-max", "12"]));
    assert_eq!(code, 1, "known violations on the default grid");
    assert!(stdout.contains("t33.2"), "{stdout}");
    assert!(stdout.contains("qdepth.j-i"), "{stdout}");
    assert!(stdout.contains("result: FAIL"), "{stdout}");
    assert!(stdout.contains("discrepancies recorded"), "{stdout}");
}

#[test]
fn verify_m2_column_passes() {
    let (code, stdout, _) = run(sqfd().args(["verify", "--n-max", "18", "--m", "2"]));
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("result: OK"), "{stdout}");
    assert!(stdout.contains("fail=0 disc=0"), "{stdout}");
}

#[test]
fn sweep_reports_identical_across_jobs() {
    let parse = |jobs: &str| {
        let (code, stdout, stderr) = run(sqfd().args([
            "sweep", "--n-max", "8", "--format", "json", "--jobs", jobs,
        ]));
        assert_eq!(code, 1, "grid contains known violations: {stderr}");
        let mut value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        value.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&value).unwrap()
    };
    assert_eq!(parse("1"), parse("3"));
}

#[test]
fn sweep_writes_report_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = run(sqfd().args([
        "sweep",
        "--n-max",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]));
    assert_eq!(code, 1);
    assert!(stdout.is_empty(), "report goes to the file");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report["summary"]["pass"].as_u64().unwrap() > 0);
    assert_eq!(report["ranges"]["n_max"], 6);

    let (code, stdout, _) = run(sqfd().args(["sweep", "--n-max", "5", "--format", "csv"]));
    assert_eq!(code, 1);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id,n,m,k,d,variant,relation,lhs,rhs,holds,category"
    );
    assert!(stdout.contains("jpei-variants,4,3,3,,,=,0,2,false,finding"), "{stdout}");
}
