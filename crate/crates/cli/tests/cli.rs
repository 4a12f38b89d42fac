//! End-to-end tests of the omega2 binary: exit codes, the documented
//! command examples, report schema conformance, and run determinism.

mod common;

use common::*;
use serde_json::Value;
use std::path::PathBuf;

fn tmp_report(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("omega2-{name}-{}.json", std::process::id()))
}

fn corpus_arg() -> String {
    corpus_dir().to_str().expect("utf-8 path").to_owned()
}

fn node_case_arg() -> String {
    case_path("node_basic.case")
        .to_str()
        .expect("utf-8 path")
        .to_owned()
}

#[test]
fn corpus_run_exits_cleanly_and_the_report_validates_against_the_schema() {
    let report_path = tmp_report("schema");
    let out = omega2(&[
        "corpus",
        "--dir",
        &corpus_arg(),
        "--seed",
        "7",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "corpus run failed:\n{stdout}");
    assert!(stdout.contains("0 refuted, 0 inconclusive, 0 mismatches"));

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(repo_root().join("schema/report.schema.json")).unwrap(),
    )
    .unwrap();
    if let Err(msg) = validate(&schema, &schema, &report, "report") {
        panic!("report does not match the shipped schema: {msg}");
    }

    let summary = &report["summary"];
    let by_status: u64 = ["verified", "hypothesis_not_met", "refuted", "inconclusive"]
        .iter()
        .map(|k| summary[*k].as_u64().unwrap())
        .sum();
    assert_eq!(summary["total"].as_u64().unwrap(), by_status);

    // Whenever every hypothesis of a check is machine-verified, the verdict
    // must be a definite verified, never inconclusive.
    for case in report["cases"].as_array().unwrap() {
        for check in case["checks"].as_array().unwrap() {
            let rep = &check["report"];
            let all_met = rep["hypotheses"]
                .as_array()
                .unwrap()
                .iter()
                .all(|h| h["outcome"] == "met");
            if all_met {
                assert_eq!(
                    rep["status"], "verified",
                    "{}/{} has all hypotheses met but is not verified",
                    case["case"], check["check"]
                );
            }
        }
    }
    std::fs::remove_file(&report_path).ok();
}

#[test]
fn reports_with_one_seed_are_byte_identical_across_runs() {
    let first = tmp_report("determinism-a");
    let second = tmp_report("determinism-b");
    for path in [&first, &second] {
        let out = omega2(&[
            "corpus",
            "--dir",
            &corpus_arg(),
            "--seed",
            "7",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    let a = normalize_timing(&std::fs::read_to_string(&first).unwrap());
    let b = normalize_timing(&std::fs::read_to_string(&second).unwrap());
    assert_eq!(
        a, b,
        "two runs with the same seed produced different reports"
    );
    std::fs::remove_file(&first).ok();
    std::fs::remove_file(&second).ok();
}

#[test]
fn the_committed_golden_report_stays_byte_stable() {
    let report_path = tmp_report("golden");
    let out = omega2(&[
        "corpus",
        "--dir",
        &corpus_arg(),
        "--seed",
        "7",
        "--trials",
        "32",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let fresh = normalize_report(&std::fs::read_to_string(&report_path).unwrap());
    std::fs::remove_file(&report_path).ok();
    let golden_path = repo_root().join("crates/cli/tests/golden/corpus-seed7.json");
    let golden = normalize_report(&std::fs::read_to_string(&golden_path).unwrap());
    assert_eq!(
        fresh, golden,
        "the corpus report drifted from the golden file; regenerate \
         crates/cli/tests/golden/corpus-seed7.json if the change is intended"
    );
}

#[test]
fn usage_and_parse_errors_exit_with_code_four() {
    // Missing required argument.
    let out = omega2(&["verify"]);
    assert_eq!(exit_code(&out), 4);

    // Nonexistent case file.
    let out = omega2(&[
        "resolve",
        "--case",
        "/nonexistent/zzz.case",
        "--module",
        "Mx",
    ]);
    assert_eq!(exit_code(&out), 4);

    // Unknown checker id.
    let out = omega2(&[
        "verify",
        "--case",
        &node_case_arg(),
        "--checker",
        "T9",
        "--module",
        "Mx",
    ]);
    assert_eq!(exit_code(&out), 4);

    // Malformed case file.
    let bad = std::env::temp_dir().join(format!("omega2-bad-{}.case", std::process::id()));
    std::fs::write(
        &bad,
        "[ring]\np = 32003\nvars = x, y\nnot a key value line\n",
    )
    .unwrap();
    let out = omega2(&["verify", "--case", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 4);
    std::fs::remove_file(&bad).ok();
}

#[test]
fn an_expectation_mismatch_exits_with_code_one() {
    // An ad-hoc check carries an implicit `verified` expectation; the
    // torsion checker refuses the axis module, so the run reports the
    // mismatch and signals it in the exit code.
    let out = omega2(&[
        "verify",
        "--case",
        &node_case_arg(),
        "--checker",
        "T4",
        "--module",
        "Mx",
    ]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 1, "stdout:\n{stdout}");
    assert!(stdout.contains("<-- mismatch"));
    assert!(stdout.contains("hypothesis_not_met"));
}

#[test]
fn a_clean_hypothesis_not_met_expectation_exits_with_code_zero() {
    let case = case_path("node_sharpness.case");
    let out = omega2(&["verify", "--case", case.to_str().unwrap()]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
    assert!(stdout.contains("0 mismatches"));
}

#[test]
fn the_documented_torsion_example_verifies_with_its_length_witness() {
    let report_path = tmp_report("torsion-example");
    let out = omega2(&[
        "verify",
        "--case",
        &node_case_arg(),
        "--checker",
        "T4",
        "--module",
        "Mxy",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
    assert!(stdout.contains("verified"));

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let check = &report["cases"][0]["checks"][0];
    assert_eq!(check["report"]["status"], "verified");
    assert_eq!(check["report"]["witnesses"]["torsion_length"], "2");
    std::fs::remove_file(&report_path).ok();
}

#[test]
fn the_documented_theta_example_prints_plus_one() {
    let out = omega2(&[
        "theta",
        "--case",
        &node_case_arg(),
        "--left",
        "Mx",
        "--right",
        "My",
    ]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
    assert!(stdout.contains("theta(Mx, My) = +1"));
}

#[test]
fn theta_of_an_axis_against_itself_is_minus_one() {
    let out = omega2(&[
        "theta",
        "--case",
        &node_case_arg(),
        "--left",
        "Mx",
        "--right",
        "Mx",
    ]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
    assert!(stdout.contains("theta(Mx, Mx) = -1"));
}

#[test]
fn theta_exits_with_code_one_when_a_hypothesis_is_refused() {
    // Rank is undefined over the non-reduced ring, so the pairing refuses.
    let case = case_path("nonreduced.case");
    let out = omega2(&[
        "theta",
        "--case",
        case.to_str().unwrap(),
        "--left",
        "M",
        "--right",
        "N",
    ]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 1, "stdout:\n{stdout}");
    assert!(stdout.contains("hypothesis not met"), "stdout:\n{stdout}");
}

#[test]
fn resolve_invariants_tor_and_ext_print_their_sections() {
    let case = node_case_arg();

    let out = omega2(&["resolve", "--case", &case, "--module", "k", "--length", "4"]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
    assert!(stdout.contains("betti: 1 2 2 2"), "stdout:\n{stdout}");

    let out = omega2(&["invariants", "--case", &case, "--module", "Mxy"]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
    assert!(stdout.contains("torsion: length 0"), "stdout:\n{stdout}");
    assert!(stdout.contains("constant rank 1"), "stdout:\n{stdout}");
    assert!(stdout.contains("depth: 1"), "stdout:\n{stdout}");

    let out = omega2(&["tor", "--case", &case, "--left", "Mx", "--right", "My"]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");

    let out = omega2(&["ext", "--case", &case, "--left", "Mx", "--right", "Mx"]);
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "stdout:\n{stdout}");
}
