//! End-to-end CLI tests: golden files pin the output schemas, error paths
//! pin the exit codes and the machine-readable first token on stderr.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_et-spectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// The pinned golden commands. Grids are small so these stay fast.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "spectrum_harmonic_d2.csv",
        &[
            "spectrum",
            "--model",
            "harmonic-approx",
            "-P",
            "D=2",
            "--levels",
            "0..4",
            "--grid-points",
            "129",
            "--grid-xmax",
            "20",
        ],
    ),
    (
        "spectrum_soft_coulomb_d2.json",
        &[
            "spectrum",
            "--model",
            "soft-coulomb",
            "-P",
            "D=2",
            "--levels",
            "0..3",
            "--grid-points",
            "257",
            "--grid-xmax",
            "60",
            "--format",
            "json",
        ],
    ),
    (
        "envelope_soft_coulomb_d2.csv",
        &[
            "envelope",
            "--model",
            "soft-coulomb",
            "-P",
            "D=2",
            "--levels",
            "0..1",
            "--window",
            "-2..2",
            "--points",
            "5",
        ],
    ),
    (
        "compare_hulthen.csv",
        &[
            "compare",
            "--model",
            "hulthen",
            "-P",
            "k=1",
            "-P",
            "a=0.2",
            "--levels",
            "0..2",
            "--grid-points",
            "1025",
            "--grid-xmax",
            "12",
        ],
    ),
    (
        "wavefunction_soft_coulomb_d1.csv",
        &[
            "wavefunction",
            "--model",
            "soft-coulomb",
            "-P",
            "D=1",
            "--levels",
            "0..1",
            "--points",
            "9",
            "--window",
            "-4..4",
            "--grid-points",
            "257",
            "--grid-xmax",
            "30",
        ],
    ),
    (
        "sweepd_single_d2.csv",
        &[
            "sweep-d",
            "--model",
            "soft-coulomb",
            "--levels",
            "0..0",
            "--d-range",
            "2..2",
            "--d-count",
            "1",
            "--grid-points",
            "129",
            "--grid-xmax",
            "30",
        ],
    ),
    (
        "convergence_harmonic_d1.csv",
        &[
            "convergence",
            "--model",
            "harmonic-approx",
            "-P",
            "D=1",
            "--levels",
            "0..1",
            "--grid-points",
            "65",
            "--grid-xmax",
            "10",
        ],
    ),
];

#[test]
fn golden_files_are_reproduced() {
    for (name, args) in GOLDEN_CASES {
        let expected = std::fs::read_to_string(golden_path(name))
            .unwrap_or_else(|e| panic!("missing golden file {name}: {e}"));
        let actual = stdout_of(args);
        assert_eq!(actual, expected, "golden mismatch for {name}");
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for (name, args) in GOLDEN_CASES {
        let first = stdout_of(args);
        let second = stdout_of(args);
        assert_eq!(first, second, "nondeterministic output for {name}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let (_, args) = GOLDEN_CASES[0];
    let piped = stdout_of(args);
    let mut with_out: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    with_out.push("--out".into());
    with_out.push(path.to_string_lossy().into_owned());
    let out = bin().args(&with_out).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), piped);
}

#[test]
fn sweep_single_point_matches_spectrum() {
    // Same engines, same grid: the one-point sweep must agree with the
    // spectrum rows to every printed digit.
    let sweep = stdout_of(&[
        "sweep-d",
        "--model",
        "soft-coulomb",
        "--levels",
        "0..0",
        "--d-range",
        "2..2",
        "--d-count",
        "1",
        "--grid-points",
        "257",
        "--grid-xmax",
        "40",
    ]);
    let spectrum = stdout_of(&[
        "spectrum",
        "--model",
        "soft-coulomb",
        "-P",
        "D=2",
        "--levels",
        "0..0",
        "--grid-points",
        "257",
        "--grid-xmax",
        "40",
    ]);
    // sweep row: n,d,e_fgh,e_var,e_et ; spectrum row: n,e_et,e_fgh,...
    let sweep_fields: Vec<&str> = sweep.lines().nth(1).unwrap().split(',').collect();
    let spec_fields: Vec<&str> = spectrum.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(sweep_fields[2], spec_fields[2], "e_fgh differs");
    assert_eq!(sweep_fields[4], spec_fields[1], "e_et differs");
}

fn expect_failure(args: &[&str], code: i32, name: &str) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "args {:?}: stderr {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    let first = stderr.split_whitespace().next().unwrap_or("");
    assert_eq!(first, name, "stderr was: {stderr}");
    assert_eq!(stderr.lines().count(), 1, "error must be a single line");
}

#[test]
fn validation_failures_exit_2_with_the_error_name_first() {
    expect_failure(
        &[
            "spectrum",
            "--model",
            "soft-coulomb",
            "-P",
            "D=-1",
            "--levels",
            "0..3",
        ],
        2,
        "NonPositiveBias",
    );
    expect_failure(
        &["spectrum", "--model", "nope", "--levels", "0..3"],
        2,
        "UnknownModel",
    );
    expect_failure(
        &["spectrum", "--model", "soft-coulomb", "--levels", "0..3"],
        2,
        "MissingParameter",
    );
    expect_failure(
        &[
            "spectrum",
            "--model",
            "pure-coulomb",
            "--levels",
            "0..1",
        ],
        2,
        "SingularPotentialOnGrid",
    );
    expect_failure(
        &[
            "compare",
            "--model",
            "hulthen",
            "-P",
            "k=1",
            "-P",
            "a=0.2",
            "--levels",
            "0..5",
        ],
        2,
        "NoBoundState",
    );
    expect_failure(
        &[
            "sweep-d",
            "--model",
            "soft-coulomb",
            "--levels",
            "0..2",
            "--d-range",
            "1..2",
        ],
        2,
        "UsageError",
    );
    // Empty level list is a parse-level usage error.
    expect_failure(
        &["spectrum", "--model", "soft-coulomb", "-P", "D=2", "--levels", "4..1"],
        2,
        "UsageError",
    );
    expect_failure(&["spectrum", "--model", "soft-coulomb", "-P", "D=2"], 2, "UsageError");
}

#[test]
fn numerical_failures_exit_3() {
    // The Hulthen envelope has no bound level 5: bracketing fails.
    expect_failure(
        &[
            "spectrum",
            "--model",
            "hulthen",
            "-P",
            "k=1",
            "-P",
            "a=0.2",
            "--levels",
            "0..5",
            "--grid-points",
            "257",
            "--grid-xmax",
            "30",
        ],
        3,
        "RootNotBracketed",
    );
}

#[test]
fn json_output_carries_the_metadata_block() {
    let text = stdout_of(&[
        "spectrum",
        "--model",
        "soft-coulomb",
        "-P",
        "D=2",
        "--levels",
        "0..1",
        "--grid-points",
        "129",
        "--grid-xmax",
        "40",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["metadata"]["command"], "spectrum");
    assert_eq!(doc["metadata"]["model"], "soft-coulomb");
    assert_eq!(doc["metadata"]["parameters"]["D"], 2.0);
    assert_eq!(doc["metadata"]["grid"]["n_points"], 129);
    assert_eq!(doc["metadata"]["solver_tol"], 1e-12);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert!(doc["rows"][0]["e_coulomb"].is_null());
    assert!(doc["rows"][1]["e_coulomb"].is_number());
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("spectrum"));
}
