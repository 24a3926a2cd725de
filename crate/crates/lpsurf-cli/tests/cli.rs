//! End-to-end command-line tests: exit codes, output determinism, the JSON
//! report schema and config export/reload.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lpsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn registry_targets_pass_with_exit_zero() {
    for id in ["6.1", "6.2", "6.3", "6.4"] {
        let output = lpsurf(&["check-structure", id]);
        assert_eq!(output.status.code(), Some(0), "check-structure {id}");
    }
    for id in ["6.1/M1", "6.4/M1", "6.4/M2"] {
        let output = lpsurf(&["analyze", id]);
        assert_eq!(output.status.code(), Some(0), "analyze {id}");
        let output = lpsurf(&["verify-theorems", id]);
        assert_eq!(output.status.code(), Some(0), "verify-theorems {id}");
    }
}

#[test]
fn unknown_targets_exit_two() {
    let output = lpsurf(&["check-structure", "9.9"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown example id"));

    let output = lpsurf(&["analyze", "6.4", "--hypersurface", "M9"]);
    assert_eq!(output.status.code(), Some(2));

    let output = lpsurf(&["export-example", "none"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn failing_checks_exit_one_with_witness() {
    // The flat three-dimensional structure is not para-Sasakian; claiming
    // that level must fail with a witness point in the output.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("claims-too-much.json");
    let mut config: Value =
        serde_json::from_str(&stdout(&lpsurf(&["export-example", "6.3"]))).unwrap();
    config["expect"] = Value::String("lp-sasakian".to_string());
    std::fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();

    let output = lpsurf(&["check-structure", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(text.contains("overall: FAIL"));
    assert!(text.contains("witness"), "witness point missing:\n{text}");
}

#[test]
fn json_reports_are_deterministic_and_carry_the_schema() {
    let first = lpsurf(&["verify-theorems", "6.4/M1", "--format", "json"]);
    let second = lpsurf(&["verify-theorems", "6.4/M1", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout, "json must be byte-identical");

    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["seed"], 42);
    assert_eq!(report["overall"], "pass");

    let entries: Vec<&Value> = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["entries"].as_array().unwrap())
        .collect();
    let shape_operator = entries
        .iter()
        .find(|e| e["theorem"] == "5.5a")
        .expect("5.5a entry");
    assert_eq!(shape_operator["pass"], true);
    assert!(shape_operator["max_residual"].as_f64().unwrap() < 1e-9);

    let locally_product = entries
        .iter()
        .find(|e| e["theorem"] == "5.9")
        .expect("5.9 entry");
    assert_eq!(locally_product["pass"], false);
    assert_eq!(locally_product["kind"], "determination");

    // Text output is deterministic too.
    let first = lpsurf(&["analyze", "6.3"]);
    let second = lpsurf(&["analyze", "6.3"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn expected_discrepancies_appear_in_json() {
    let output = lpsurf(&["analyze", "6.4/M1", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&output.stdout).unwrap();
    let entries: Vec<&Value> = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["entries"].as_array().unwrap())
        .collect();
    let quoted_normal = entries
        .iter()
        .find(|e| e["theorem"] == "quoted:normal")
        .expect("quoted normal entry");
    assert_eq!(quoted_normal["expected_discrepancy"], true);
    assert_eq!(quoted_normal["pass"], false);

    // The analysis report carries the theorem batteries too.
    let shape_operator = entries
        .iter()
        .find(|e| e["theorem"] == "5.5a")
        .expect("5.5a entry in analyze output");
    assert_eq!(shape_operator["pass"], true);
}

#[test]
fn export_reload_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("warped.json");
    let exported = lpsurf(&[
        "export-example",
        "6.4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exported.status.code(), Some(0));
    assert!(Path::new(&path).exists());

    // Re-exporting the loaded file reproduces the same document.
    let text = std::fs::read_to_string(&path).unwrap();
    let reloaded: Value = serde_json::from_str(&text).unwrap();
    let original: Value = serde_json::from_str(&stdout(&lpsurf(&["export-example", "6.4"]))).unwrap();
    assert_eq!(reloaded, original);

    // Analyzing the exported file reproduces the registry verdicts (the
    // file has no registry expectations, only the pipeline checks).
    let from_file = lpsurf(&["analyze", path.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    let text = stdout(&from_file);
    assert!(text.contains("noninvariant-transversal-xi"));
    assert!(text.contains("noninvariant-tangent-xi"));
}

#[test]
fn config_validation_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();

    // Requesting a Lorentzian level without a metric.
    let path = dir.path().join("no-metric.json");
    let mut config: Value =
        serde_json::from_str(&stdout(&lpsurf(&["export-example", "6.1"]))).unwrap();
    config["expect"] = Value::String("lap".to_string());
    std::fs::write(&path, config.to_string()).unwrap();
    let output = lpsurf(&["check-structure", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("metric required"));

    // A contact form of the wrong length.
    let path = dir.path().join("bad-eta.json");
    let mut config: Value =
        serde_json::from_str(&stdout(&lpsurf(&["export-example", "6.4"]))).unwrap();
    config["eta"] = serde_json::json!(["0", "1"]);
    std::fs::write(&path, config.to_string()).unwrap();
    let output = lpsurf(&["check-structure", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("expected 3 entries"));

    // A syntax error in an expression, reported with its position.
    let path = dir.path().join("bad-expr.json");
    let mut config: Value =
        serde_json::from_str(&stdout(&lpsurf(&["export-example", "6.4"]))).unwrap();
    config["xi"] = serde_json::json!(["0", "0", "foo(1)"]);
    std::fs::write(&path, config.to_string()).unwrap();
    let output = lpsurf(&["check-structure", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown function"));
}

#[test]
fn explicit_connection_coefficients_are_accepted() {
    // Supply the warped structure's Levi-Civita coefficients explicitly;
    // the affine battery must reproduce the characteristic-field case.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("explicit-gamma.json");
    let mut config: Value =
        serde_json::from_str(&stdout(&lpsurf(&["export-example", "6.4"]))).unwrap();
    let zero3 = || vec!["0", "0", "0"];
    let mut gamma = vec![vec![zero3(), zero3(), zero3()]; 3];
    gamma[0][0][2] = "-1";
    gamma[0][2][0] = "-1";
    gamma[1][1][2] = "1";
    gamma[1][2][1] = "1";
    gamma[2][0][0] = "-exp(-2*z)";
    gamma[2][1][1] = "exp(2*z)";
    config["connection"] = serde_json::json!(gamma);
    std::fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();

    let output = lpsurf(&["verify-theorems", path.to_str().unwrap(), "--hypersurface", "M1"]);
    assert_eq!(output.status.code(), Some(0), "{}", stdout(&output));
    let text = stdout(&output);
    assert!(text.contains("4.II-J"), "case-two battery missing:\n{text}");

    // An asymmetric coefficient array is rejected.
    gamma[0][0][1] = "x";
    config["connection"] = serde_json::json!(gamma);
    std::fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();
    let output = lpsurf(&["verify-theorems", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("not symmetric"));
}

#[test]
fn list_examples_covers_the_registry() {
    let output = lpsurf(&["list-examples"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for id in ["6.1/M1", "6.1/M2", "6.2/M", "6.3/M", "6.4/M1", "6.4/M2"] {
        assert!(text.contains(id), "{id} missing from listing");
    }

    let output = lpsurf(&["list-examples", "--format", "json"]);
    let listing: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(listing.as_array().unwrap().len(), 4);
}

#[test]
fn sampling_flags_are_respected() {
    let output = lpsurf(&["verify-theorems", "6.4/M1", "--seed", "7", "--points", "5", "--tol", "1e-7"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("seed 7"));
    assert!(text.contains("sample points 5"));
}
