//! End-to-end tests of the binary: known invariant values through the CLI,
//! deterministic output, strict schema errors, and exit-code semantics.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../monoids")
        .join(name);
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let output = run(args);
    let code = output.status.code().unwrap_or(-1);
    let stdout = String::from_utf8(output.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {stdout}");
    });
    (code, value)
}

#[test]
fn omega_of_listed_elements() {
    let (code, report) = run_json(&["omega", "--monoid", &fixture("e2.json"), "--elem", "1,5"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["value"], 5);

    let (code, report) = run_json(&["omega", "--monoid", &fixture("e2.json"), "--elem", "3,2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["value"], 4);

    let (code, report) = run_json(&["omega", "--monoid", &fixture("e2.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["value"], 5);
    assert_eq!(report["result"]["attained_at"], serde_json::json!([1, 5]));
}

#[test]
fn omega_of_infinite_gap_monoid_is_infinity() {
    let (code, report) = run_json(&["omega", "--monoid", &fixture("e4.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["value"], "infinity");
    assert_eq!(report["result"]["infinite_axis"], 1);
}

#[test]
fn betti_box_of_e3_lists_21_elements() {
    let (code, report) = run_json(&[
        "betti",
        "--monoid",
        &fixture("e3.json"),
        "--box",
        "161,28",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["count"], 21);
    let betti = report["result"]["betti"].as_array().unwrap();
    assert_eq!(betti.first().unwrap(), &serde_json::json!([41, 7]));
    assert_eq!(betti.last().unwrap(), &serde_json::json!([161, 28]));
    assert_eq!(report["result"]["completeness"], "box-relative");
}

#[test]
fn member_and_gaps() {
    let (code, report) = run_json(&["member", "--monoid", &fixture("e2.json"), "--elem", "0,0"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["member"], true);

    let (code, report) = run_json(&["gaps", "--monoid", &fixture("e2.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["count"], 5);

    let (code, report) = run_json(&["gaps", "--monoid", &fixture("e4.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        report["result"]["finiteness"]["kind"],
        "infinite_along_axes"
    );
    assert_eq!(report["result"]["finiteness"]["axes"], serde_json::json!([1]));
}

#[test]
fn factorize_the_e3_betti_element() {
    let (code, report) = run_json(&[
        "factorize",
        "--monoid",
        &fixture("e3.json"),
        "--elem",
        "161,28",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["count"], 3);
    let rows: Vec<Vec<u64>> = report["result"]["factorizations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| {
            z["exponents"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect()
        })
        .collect();
    assert!(rows.contains(&vec![0, 0, 0, 0, 0, 0, 0, 7]));
    assert!(rows.contains(&vec![3, 4, 1, 0, 0, 0, 0, 0]));
    assert!(rows.contains(&vec![4, 3, 0, 1, 0, 0, 0, 0]));
}

#[test]
fn backslash_summary_values() {
    let path = fixture("backslash-m3.json");
    let (code, report) = run_json(&["minimals", "--monoid", &path]);
    assert_eq!(code, 0);
    assert_eq!(
        report["result"]["minimals"],
        serde_json::json!([[0, 3], [1, 2], [2, 1], [3, 0]])
    );

    let (code, report) = run_json(&["elasticity", "--monoid", &path]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["elasticity"], "5/3");
    assert_eq!(report["result"]["provenance"], "exact");

    let (code, report) = run_json(&["catenary", "--monoid", &path]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["catenary"], 3);

    let (code, report) = run_json(&["omega", "--monoid", &path]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["value"], 5);

    let (code, report) = run_json(&["catenary", "--monoid", &path, "--elem", "10,0"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["catenary"], 3);
}

#[test]
fn check_ga_exit_codes() {
    let ok = run(&["check", "ga", "--monoid", &fixture("backslash-m3.json")]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = run(&["check", "ga", "--monoid", &fixture("backslash-gaps124.json")]);
    assert_eq!(bad.status.code(), Some(2), "violation must exit 2");
    let stdout = String::from_utf8(bad.stdout).unwrap();
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["result"]["holds"], false);
    assert!(report["result"]["witness"].is_object());
}

#[test]
fn check_lengths_intervals_finds_non_interval_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("numerical.json");
    std::fs::write(
        &path,
        r#"{"kind":"atoms","dim":1,"atoms":[[3],[5],[7]]}"#,
    )
    .unwrap();
    let output = run(&[
        "check",
        "lengths-intervals",
        "--monoid",
        path.to_str().unwrap(),
        "--box",
        "12",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let report: Value = serde_json::from_str(&String::from_utf8(output.stdout).unwrap()).unwrap();
    assert_eq!(report["result"]["witness"]["elem"], serde_json::json!([12]));
    assert_eq!(
        report["result"]["witness"]["lengths"],
        serde_json::json!([2, 4]),
        "12 = 5+7 = 3+3+3+3"
    );
}

#[test]
fn check_length_monotone_holds_on_e1() {
    let output = run(&[
        "check",
        "length-monotone",
        "--monoid",
        &fixture("e1.json"),
        "--box",
        "9,9",
    ]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn pi_profile_matches_listing() {
    let (code, report) = run_json(&[
        "pi-profile",
        "--monoid",
        &fixture("e2.json"),
        "--axis",
        "2",
        "--vmax",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["pi1"], serde_json::json!([3, 3, 0, 0, 0]));
    assert_eq!(report["result"]["pi2"], serde_json::json!([6, 6, 3, 3, 0]));
    assert_eq!(report["result"]["a_values"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        vec!["atoms", "--monoid", &fixture("e1.json")],
        vec!["betti", "--monoid", &fixture("e2.json")],
        vec![
            "fuzz",
            "--trials",
            "5",
            "--dim",
            "2",
            "--max-coord",
            "3",
            "--seed",
            "11",
        ],
    ] {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let slice: Vec<&str> = owned.iter().map(String::as_str).collect();
        let first = run(&slice);
        let second = run(&slice);
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(
            first.stdout, second.stdout,
            "stdout must be byte-identical for {args:?}"
        );
    }
}

#[test]
fn strict_schema_rejects_misspelled_fields() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.json");
    std::fs::write(
        &path,
        r#"{"kind":"ideal_extension","dim":2,"minimal":[[2,0]]}"#,
    )
    .unwrap();
    let output = run(&["atoms", "--monoid", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1), "data errors exit 1");
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("error"), "stderr: {stderr}");
}

#[test]
fn dropped_generators_warn_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("redundant.json");
    std::fs::write(
        &path,
        r#"{"kind":"ideal_extension","dim":2,"minimals":[[2,0],[2,1],[0,3]]}"#,
    )
    .unwrap();
    let output = run(&["minimals", "--monoid", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("dominated"), "stderr: {stderr}");
    let report: Value = serde_json::from_str(&String::from_utf8(output.stdout).unwrap()).unwrap();
    assert_eq!(
        report["result"]["dropped_generators"],
        serde_json::json!([[2, 1]])
    );
}

#[test]
fn fuzz_summary_and_replayable_specs() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run_json(&[
        "fuzz",
        "--trials",
        "10",
        "--dim",
        "2",
        "--max-coord",
        "3",
        "--seed",
        "77",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "no failures expected in dimension two");
    assert_eq!(report["result"]["trials"], 10);
    assert!(report["result"]["tallies"]["ga"]["pass"].as_u64().unwrap() > 0);
    assert_eq!(report["result"]["failures"], serde_json::json!([]));

    // The counterexample format is the ordinary spec format: a file written
    // by hand in that shape replays through any check command.
    let replay = dir.path().join("replay.json");
    std::fs::write(
        &replay,
        r#"{"kind":"ideal_extension","dim":2,"minimals":[[2,0],[0,3]]}"#,
    )
    .unwrap();
    let output = run(&["check", "ga", "--monoid", replay.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn unknown_check_name_is_a_usage_error() {
    let output = run(&["check", "bogus", "--monoid", &fixture("e1.json")]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn table_output_renders() {
    let output = run(&["member", "--monoid", &fixture("e2.json"), "--elem", "2,1", "--table"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("member"));
    assert!(stdout.contains("true"));
}
