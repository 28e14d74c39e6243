use std::process::Command;

use gkz_cli::{run, EXIT_ERROR, EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE};

fn gkz(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gkz").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn point_scan_passes_with_the_point_as_witness() {
    let (code, out, _) = gkz(&["gkz-scan", "--point", "0.3", "--r", "1", "--nmax", "20"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["scanPassed"], true);
    assert!((v["witness"][0].as_f64().unwrap() - 0.3).abs() < 1e-12);
}

#[test]
fn half_mixture_is_falsified_at_degree_seven() {
    let (code, out, _) = gkz(&["gkz-scan", "--mixture", "0.5@0,0.5@0.5", "--r", "1", "--nmax", "10"]);
    assert_eq!(code, EXIT_FALSIFIED);
    let v = json(&out);
    let first = &v["falsifiers"][0];
    assert_eq!(first["n"], 7);
    assert!(first["modulus"].as_f64().unwrap() >= 1.0);
}

#[test]
fn moments_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    // exact in binary; rounded 0.9^k would legitimately spread the root cluster
    let moments: Vec<[f64; 2]> = (0..40).map(|k| [0.5f64.powi(k), 0.0]).collect();
    std::fs::write(&path, serde_json::to_string(&moments).unwrap()).unwrap();
    let (code, _, err) = gkz(&[
        "gkz-scan",
        "--moments",
        path.to_str().unwrap(),
        "--r",
        "1",
        "--nmax",
        "20",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
}

#[test]
fn defect_table_reference_rows() {
    let (code, out, _) = gkz(&["defect-table", "--point", "0.5", "--k", "2", "--n", "10,100", "--radius", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n,defect_over_nk,bound_over_nk\n10,0.025,0.05\n100,0.0025,0.005\n");
}

#[test]
fn vieta_check_clamps_k() {
    let (code, out, _) = gkz(&["vieta-check", "--point", "0.2+0.1i", "--n", "3", "--kmax", "9"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["kMax"], 2);
    assert!(v["maxResidual"].as_f64().unwrap() < 1e-20);
}

#[test]
fn hardy_info_classical() {
    let (code, out, _) = gkz(&["hardy-info", "--classical"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["shiftNorm"], 1.0);
    assert_eq!(v["r0Estimate"], 1.0);
    assert_eq!(v["spectralRadiusEstimate"], 1.0);
    assert_eq!(v["strictlyCyclicSufficient"], false);
}

#[test]
fn planted_zero_reports_the_grid_point() {
    let (code, _, err) = gkz(&["wcomp-verify", "--builtin", "planted-zero"]);
    assert_eq!(code, EXIT_FALSIFIED);
    assert!(err.contains("16"), "{err}");
}

#[test]
fn affine_half_round_trip() {
    let (code, out, _) = gkz(&["wcomp-verify", "--builtin", "affine-half", "--polys", "10", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["seed"], 3);
    assert!(v["maxResidual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn donoghue_demo_rows() {
    let (code, out, _) = gkz(&["donoghue-demo", "--kind", "geometric:0.5", "--sizes", "16,32"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("16,"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(gkz(&["gkz-scan", "--r", "1", "--nmax", "5"]).0, EXIT_USAGE);
    assert_eq!(gkz(&["gkz-scan", "--point", "zz", "--r", "1", "--nmax", "5"]).0, EXIT_USAGE);
    assert_eq!(gkz(&["donoghue-demo", "--kind", "cubic"]).0, EXIT_USAGE);
    assert_eq!(gkz(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(gkz(&["--help"]).0, EXIT_OK);
}

#[test]
fn missing_file_is_an_error() {
    let (code, _, err) = gkz(&["hardy-info", "--weights", "/nonexistent/w.txt"]);
    assert_eq!(code, EXIT_ERROR, "{err}");
}

#[test]
fn output_dir_gets_the_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = gkz(&[
        "vieta-check",
        "--point",
        "0.4",
        "--n",
        "6",
        "--output-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(dir.path().join("vieta-check.json")).unwrap(), out);
}

#[test]
fn config_file_sets_precision_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"precisionBits": 20}"#).unwrap();
    assert_eq!(
        gkz(&["hardy-info", "--classical", "--config", path.to_str().unwrap()]).0,
        EXIT_USAGE
    );
    let (code, _, _) = gkz(&[
        "hardy-info",
        "--classical",
        "--config",
        path.to_str().unwrap(),
        "--precision",
        "64",
    ]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn binary_exit_codes_match_the_library() {
    let exe = env!("CARGO_BIN_EXE_gkz");
    let status = Command::new(exe)
        .args(["gkz-scan", "--mixture", "0.5@0,0.5@0.5", "--r", "1", "--nmax", "8"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_FALSIFIED));
    let status = Command::new(exe).arg("bogus").output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
