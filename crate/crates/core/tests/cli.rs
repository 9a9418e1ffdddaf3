use std::path::{Path, PathBuf};
use std::process::Command;

use omegalie::classify3::ClassificationResult;
use omegalie::cli::{run, EXIT_CHECK_FAILED, EXIT_EXTENSION_REQUIRED, EXIT_INPUT, EXIT_OK};
use omegalie::report::ReportTable;
use omegalie::variety::{F1, F2, F3};
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("omegalie").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

// the brackets [x,y] = y, [x,z] = 0, [y,z] = z with ω = J₂
const D_FILE: &str = r#"{
  "field": "Q",
  "dim": 3,
  "omega": [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]],
  "brackets": {"1,2": ["0", "1", "0"], "2,3": ["0", "0", "1"]}
}"#;

// M = [[0, −1], [1, −1]] has eigenvalues outside ℚ
const CUBE_ROOT_FILE: &str = r#"{
  "field": "Q",
  "dim": 3,
  "omega": [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]],
  "brackets": {"1,2": ["0", "0", "1"], "1,3": ["0", "1", "0"], "2,3": ["-1", "-1", "0"]}
}"#;

const NOT_OMEGA_LIE: &str = r#"{
  "field": "Q",
  "dim": 3,
  "omega": [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]],
  "brackets": {"1,2": ["1", "0", "0"]}
}"#;

#[test]
fn classify_d_gives_identity_witness() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", D_FILE);
    let o = cli(&["classify", s(&d)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with("label: D\n"));
    assert!(o.stdout.contains("(identity)"));
    let m = cli(&["--format", "machine", "classify", s(&d)]);
    let r = ClassificationResult::parse(&m.stdout).unwrap();
    assert!(r.witness.is_identity());
    assert!(r.trace.is_empty());
}

#[test]
fn canonical_output_classifies_to_itself() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&[&str], &str)] = &[
        (&["canonical", "A"], "A"),
        (&["canonical", "B"], "B"),
        (&["canonical", "D"], "D"),
        (&["canonical", "C", "--alpha", "-1"], "C:-1"),
        (&["canonical", "C", "--alpha", "-1/2"], "C:-1/2"),
        (&["canonical", "C:-3"], "C:-3"),
        (&["canonical", "C", "--alpha", "5", "--field", "Fp:101"], "C:5"),
    ];
    for (i, (args, label)) in cases.iter().enumerate() {
        let o = cli(args);
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stderr);
        let p = write(&dir, &format!("c{i}.json"), &o.stdout);
        let m = cli(&["--format", "machine", "classify", s(&p)]);
        assert_eq!(m.code, EXIT_OK, "{}", m.stderr);
        let r = ClassificationResult::parse(&m.stdout).unwrap();
        assert_eq!(r.label.to_string(), *label);
        assert!(r.witness.is_identity(), "{label}");
    }
    // a non-representative α keeps its label and identity witness only under strict labels
    let o = cli(&["canonical", "C", "--alpha", "2"]);
    let p = write(&dir, "c2.json", &o.stdout);
    let strict = cli(&["--format", "machine", "classify", s(&p), "--strict-c-labels"]);
    let r = ClassificationResult::parse(&strict.stdout).unwrap();
    assert_eq!(r.label.to_string(), "C:2");
    assert!(r.witness.is_identity());
    let plain = cli(&["--format", "machine", "classify", s(&p)]);
    assert_eq!(
        ClassificationResult::parse(&plain.stdout).unwrap().label.to_string(),
        "C:-3"
    );
}

#[test]
fn canonical_rejects_zero_alpha() {
    let o = cli(&["canonical", "C", "--alpha", "0"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("alpha must be nonzero"));
    assert_eq!(cli(&["canonical", "C"]).code, EXIT_INPUT);
    assert_eq!(cli(&["canonical", "E"]).code, EXIT_INPUT);
    assert_eq!(cli(&["canonical", "A", "--field", "Fp:2"]).code, EXIT_INPUT);
}

#[test]
fn extension_exit_code() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "cube.json", CUBE_ROOT_FILE);
    let o = cli(&["classify", s(&p)]);
    assert_eq!(o.code, EXIT_EXTENSION_REQUIRED);
    assert!(o.stderr.contains("t^2 + t + (1)"));
    let o = cli(&["--format", "machine", "classify", s(&p), "--allow-extension"]);
    assert_eq!(o.code, EXIT_OK);
    let r = ClassificationResult::parse(&o.stdout).unwrap();
    assert!(r.extension.is_some());
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", NOT_OMEGA_LIE);
    assert_eq!(cli(&["classify", s(&bad)]).code, EXIT_INPUT);
    let o = cli(&["check", s(&bad)]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("not an omega-Lie algebra"));
    assert_eq!(cli(&["check", "/nonexistent/file.json"]).code, EXIT_INPUT);
    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(cli(&["classify", s(&garbage)]).code, EXIT_INPUT);
    assert_eq!(cli(&["no-such-command"]).code, EXIT_INPUT);
    assert_eq!(cli(&["variety", "--dim", "5"]).code, EXIT_INPUT);
    assert_eq!(cli(&["verify-paper", "--section", "7"]).code, EXIT_INPUT);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn check_cross_checks_omega() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", D_FILE);
    let o = cli(&["--format", "machine", "check", s(&d)]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("valid true\n"));
    assert!(o.stdout.contains("omega-matches true\n"));
    // ω = 0 on non-Lie brackets is rejected by validation
    let lie_omega = D_FILE.replace(
        r#"[["0", "1", "0"], ["-1", "0", "0"]"#,
        r#"[["0", "0", "0"], ["0", "0", "0"]"#,
    );
    let p = write(&dir, "zero.json", &lie_omega);
    assert_eq!(cli(&["check", s(&p)]).code, EXIT_INPUT);
}

#[test]
fn omega_reduce_reports_rank_and_q() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
  "field": "Q",
  "dim": 3,
  "omega": [["0", "0", "2"], ["0", "0", "0"], ["-2", "0", "0"]],
  "brackets": {}
}"#;
    let p = write(&dir, "w.json", text);
    let o = cli(&["--format", "machine", "omega-reduce", s(&p)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with("rank 2\nq "));
    assert!(o.stdout.ends_with("verified true\n"));
}

#[test]
fn variety_emits_the_three_generators() {
    let dir = TempDir::new().unwrap();
    let ideal_path = dir.path().join("ideal.txt");
    let o = cli(&[
        "--format",
        "machine",
        "variety",
        "--dim",
        "3",
        "--output",
        s(&ideal_path),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let gens: Vec<&str> = o.stdout.lines().filter_map(|l| l.strip_prefix("generator ")).collect();
    assert_eq!(gens, [F1, F2, F3]);
    assert_eq!(o.stdout.lines().filter(|l| l.starts_with("basis ")).count(), 5);
    assert!(o.stdout.ends_with("dimension 6\n"));

    let file = std::fs::read_to_string(&ideal_path).unwrap();
    assert_eq!(
        file,
        format!("field: Q\nvars: x1, x2, x3, y1, y2, y3, z1, z2, z3\n{F1}\n{F2}\n{F3}\n")
    );
    let gb = cli(&["--format", "machine", "gb", s(&ideal_path)]);
    assert_eq!(gb.code, EXIT_OK);
    let basis = |t: &str| {
        t.lines()
            .filter(|l| l.starts_with("basis "))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(basis(&gb.stdout), basis(&o.stdout));

    let f = cli(&["--format", "machine", "variety", "--dim", "3", "--field", "Fp:101"]);
    assert!(f.stdout.ends_with("dimension 6\n"));
}

#[test]
fn fixed_d_variety_in_dimension_four() {
    let o = cli(&["--format", "machine", "variety", "--dim", "4"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.ends_with("dimension 4\n"));
}

#[test]
fn iso_reports_both_outcomes() {
    let dir = TempDir::new().unwrap();
    let c2 = write(&dir, "c2.json", &cli(&["canonical", "C", "--alpha", "2"]).stdout);
    let c3 = write(&dir, "c3.json", &cli(&["canonical", "C", "--alpha", "-3"]).stdout);
    let a = write(&dir, "a.json", &cli(&["canonical", "A"]).stdout);
    let o = cli(&["--format", "machine", "iso", s(&c2), s(&c3)]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("isomorphic true\nvia-c-pair true\n"));
    let o = cli(&["--format", "machine", "iso", s(&c2), s(&a)]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("isomorphic false\n"));
}

#[test]
fn verify_paper_sections() {
    for section in ["3", "4", "5"] {
        let o = cli(&["--format", "machine", "verify-paper", "--section", section]);
        assert_eq!(o.code, EXIT_OK, "section {section}: {}", o.stdout);
        let table = ReportTable::parse(&o.stdout).unwrap();
        assert!(!table.rows.is_empty());
        assert!(table.all_passed());
        assert!(table.rows.iter().any(|r| r.id.starts_with("Q/")));
        assert!(table.rows.iter().any(|r| r.id.starts_with("Fp:101/")));
    }
    let o = cli(&[
        "--format",
        "machine",
        "verify-paper",
        "--section",
        "4",
        "--field",
        "Fp:7",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let table = ReportTable::parse(&o.stdout).unwrap();
    assert!(table.notes.iter().any(|n| n.contains("C(-(a+1))")));
    assert!(table.rows.iter().all(|r| r.id.starts_with("Fp:7/")));
}

#[test]
fn exit_codes_are_distinct() {
    let codes = [EXIT_OK, EXIT_INPUT, EXIT_CHECK_FAILED, EXIT_EXTENSION_REQUIRED];
    assert_eq!(codes, [0, 1, 2, 3]);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_omegalie");
    let ok = Command::new(bin).args(["canonical", "D"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"2,3\": [\"0\", \"0\", \"1\"]"));
    let bad = Command::new(bin)
        .args(["canonical", "C", "--alpha", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
