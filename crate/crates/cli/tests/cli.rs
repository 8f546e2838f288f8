//! End-to-end tests of the `hypostab` binary: exit codes, JSON shapes, text
//! and CSV views, file output, and the bundled data.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypostab"));
    // Keep the host environment from steering precision under the tests.
    cmd.env_remove("HYPOSTAB_PRECISION_BITS");
    cmd
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_json(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn hc_index_staircase_has_the_maximal_index() {
    let out = run(&["hc-index", "--staircase", "3"]);
    // The typed round-trip doubles as a schema check on the emitted JSON.
    let report: hypostab_core::hypo::HcReport =
        serde_json::from_slice(&out.stdout).expect("stdout parses as an index report");
    assert!(out.status.success());
    assert_eq!(report.hc_index, Some(2));
    assert_eq!(report.upper_bound, Some(2));
    assert!(report.semi_dissipative);
}

#[test]
fn hc_index_reads_matrix_files() {
    let path = data("staircase3.json");
    let out = run(&["hc-index", "--matrix", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["hc_index"], 2);

    let neg_identity = temp_json(r#"[["-1", "0"], ["0", "-1"]]"#);
    let out = run(&["hc-index", "--matrix", neg_identity.path().to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["hc_index"], 0);
}

#[test]
fn hc_index_flags_a_missing_index_without_failing() {
    let path = data("rotation2.json");
    let out = run(&["hc-index", "--matrix", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["hc_index"], Value::Null);
    assert_eq!(v["semi_dissipative"], true);
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn unreadable_and_malformed_inputs_exit_1() {
    let out = run(&["hc-index", "--matrix", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));

    let garbage = temp_json("not a matrix");
    let out = run(&["hc-index", "--matrix", garbage.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let floats = temp_json(r#"[[0.5]]"#);
    let out = run(&["hc-index", "--matrix", floats.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["hc-index"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn det_leading_matches_the_closed_form() {
    let v = stdout_json(&run(&["det-leading", "--p", "4"]));
    assert_eq!(v["order"], 9);
    assert_eq!(v["coefficient"], "-1/216");
    assert_eq!(v["closed_form"], "-1/216");
    assert_eq!(v["closed_form_equal"], true);

    let v = stdout_json(&run(&["det-leading", "--p", "8"]));
    assert_eq!(v["order"], 25);
    assert_eq!(v["closed_form_equal"], true);
    assert!(v["coefficient"].as_str().unwrap().starts_with('-'));
}

#[test]
fn det_leading_guards_the_order() {
    let out = run(&["det-leading", "--p", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divisible by 4"));
}

#[test]
fn sweep_reproduces_the_order4_magnitude() {
    let v = stdout_json(&run(&["sweep", "--p", "4", "--epsilon", "0.304", "--grid", "65"]));
    let excess: f64 = v["result"]["max_excess"].as_str().unwrap().parse().unwrap();
    assert!(
        (1.25e-6..1.35e-6).contains(&excess),
        "max excess {excess} is off the expected magnitude"
    );
    assert_eq!(v["epsilon"], "38/125");
    assert_eq!(v["matrix"], "staircase(3)");
}

#[test]
fn sweep_emits_csv_curves() {
    let out = run(&["sweep", "--p", "2", "--epsilon", "1/4", "--grid", "9", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "tau,norm,excess");
    assert_eq!(lines.len(), 10);

    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.csv");
    let out = bin()
        .args(["sweep", "--p", "2", "--epsilon", "1/4", "--grid", "9"])
        .args(["--curve-out", curve.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(&curve).unwrap();
    assert!(written.starts_with("tau,norm,excess\n"));
}

#[test]
fn sweep_rejects_low_precision_and_the_flag_beats_the_env() {
    let out = run(&["sweep", "--p", "4", "--epsilon", "1/8", "--precision-bits", "128"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("256"));

    let out = bin()
        .env("HYPOSTAB_PRECISION_BITS", "128")
        .args(["sweep", "--p", "2", "--epsilon", "1/8", "--grid", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .env("HYPOSTAB_PRECISION_BITS", "128")
        .args(["sweep", "--p", "2", "--epsilon", "1/8", "--grid", "9"])
        .args(["--precision-bits", "256"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn decay_fit_recovers_the_predicted_exponent() {
    let v = stdout_json(&run(&["decay-fit", "--staircase", "2"]));
    assert_eq!(v["fit"]["hc_index"], 1);
    assert_eq!(v["fit"]["a_predicted"], 3);
    let a: f64 = v["fit"]["a_est"].as_str().unwrap().parse().unwrap();
    assert!((a - 3.0).abs() < 0.15, "fitted exponent {a}");
}

#[test]
fn decay_fit_rejects_non_hypocoercive_input_and_bad_windows() {
    let out = run(&["decay-fit", "--rotation"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["decay-fit", "--staircase", "2", "--log2-min", "-5", "--log2-max", "-25"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verdict_classifies_the_low_orders() {
    let v = stdout_json(&run(&["verdict", "--p", "1"]));
    assert_eq!(v["verdict"]["status"], "CounterexampleFound");
    assert!(v["verdict"]["witness"].is_object());

    let v = stdout_json(&run(&["verdict", "--p", "3"]));
    assert_eq!(v["verdict"]["status"], "NoViolationOnTestSet");
    assert_eq!(v["verdict"]["witness"], Value::Null);
}

#[test]
fn verdict_confirms_the_order4_counterexample() {
    let v = stdout_json(&run(&["verdict", "--p", "4", "--staircase", "3"]));
    assert_eq!(v["verdict"]["status"], "CounterexampleFound");
    let excess: f64 = v["verdict"]["witness"]["excess"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!(excess > 0.0);
}

#[test]
fn verdict_accepts_bundled_and_file_tableaux() {
    let v = stdout_json(&run(&["verdict", "--tableau", "euler"]));
    assert_eq!(v["verdict"]["status"], "CounterexampleFound");

    let path = data("tableau/heun2.json");
    let v = stdout_json(&run(&["verdict", "--tableau", path.to_str().unwrap()]));
    assert_eq!(v["verdict"]["status"], "CounterexampleFound");

    let out = run(&["verdict", "--tableau", "no-such-scheme"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lasm_check_holds_below_the_threshold_and_flags_above_it() {
    let v = stdout_json(&run(&[
        "lasm-check", "--p", "3", "--m", "1", "--samples", "3", "--seed", "7",
    ]));
    assert_eq!(v["index_condition_satisfied"], true);
    assert!(v["violations"].as_array().unwrap().is_empty());
    assert!(v["checked"].as_u64().unwrap() >= 3);

    let include = data("staircase3.json");
    let v = stdout_json(&run(&[
        "lasm-check", "--p", "4", "--m", "2", "--samples", "0",
        "--include", include.to_str().unwrap(),
    ]));
    assert_eq!(v["index_condition_satisfied"], false);
    let violations = v["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0]["label"], "staircase3");
}

#[test]
fn reproduce_paper_passes_on_a_reduced_config() {
    let out = run(&[
        "reproduce-paper", "--grid", "33", "--samples", "2", "--seed", "3", "--format", "json",
    ]);
    let rows = stdout_json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 24);
    for row in rows {
        assert_eq!(row["passed"], true, "row {} failed: {}", row["id"], row["observed"]);
    }
}

#[test]
fn reproduce_paper_reports_precision_failures_with_reasons() {
    let out = run(&[
        "reproduce-paper", "--grid", "9", "--samples", "1", "--precision-bits", "128",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("FAIL"));
    assert!(table.contains("precision of 128 bits is too low"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["hc-index", "--staircase", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["hc_index"], 1);
}

#[test]
fn sequential_and_parallel_output_are_identical() {
    let args = ["sweep", "--p", "4", "--epsilon", "1/8", "--grid", "17"];
    let parallel = run(&args);
    let mut seq_args: Vec<&str> = args.to_vec();
    seq_args.push("--sequential");
    let sequential = run(&seq_args);
    assert!(parallel.status.success() && sequential.status.success());
    assert_eq!(parallel.stdout, sequential.stdout);
}
