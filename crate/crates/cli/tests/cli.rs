use std::process::{Command, Output};

use serde_json::Value;

fn mcrys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcrys")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn compute_z3d_lists_macmahon_coefficients() {
    let o = mcrys(&["compute", "z3d", "--N", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["window"], 20);
    let coeffs: Vec<String> = v["value"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
    let even: Vec<&str> = coeffs.iter().step_by(2).map(String::as_str).take(6).collect();
    assert_eq!(even, ["1", "1", "3", "6", "13", "24"]);
}

#[test]
fn compute_phi_is_exact() {
    let o = mcrys(&["compute", "phi", "--k", "1", "--lambda", "1", "--p", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1 + q\n# exact\n");
}

#[test]
fn compute_schur_csv() {
    let o = mcrys(&["compute", "schur", "--lambda", "2,1", "--N", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u_exp,coeff"));
    // s_{21}(q^ρ) = q^{5/2} / ((1-q)^2 (1+q+q^2)) starts u^5 + 2u^7.
    assert_eq!(lines.next(), Some("5,1"));
    assert_eq!(lines.next(), Some("7,2"));
}

#[test]
fn degenerate_window_verifies() {
    let o = mcrys(&["verify", "rings", "--q-order", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn expected_failure_is_honored() {
    let o = mcrys(&["verify", "toda", "--g", "topvertex", "--expect-fail", "reduction", "--p", "0", "--K", "1", "--q-order", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("XFAIL reduction"));
}

#[test]
fn unexpected_pass_fails_the_run() {
    let o = mcrys(&["verify", "rings", "--expect-fail", "inverses", "--q-order", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("XPASS inverses"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mcrys(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(mcrys(&["compute", "z2d", "--q-order", "-1"]).status.code(), Some(2));
    assert_eq!(mcrys(&["compute", "tau", "--g", "nope"]).status.code(), Some(2));
    assert_eq!(mcrys(&["compute", "schur", "--lambda", "1,2"]).status.code(), Some(2));
    assert_eq!(mcrys(&["compute", "zp", "--K", "0"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("mcrys-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zp.json");
    let args = ["compute", "zp", "--p", "1", "--K", "1", "--t-deg", "2", "--q-order", "10", "--format", "json"];
    let first = mcrys(&args);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    assert_eq!(mcrys(&with_out).status.code(), Some(0));
    assert_eq!(first.stdout, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_json_report() {
    let o = mcrys(&["verify", "crystal", "--p", "0", "--K", "1", "--t-deg", "1", "--q-order", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["name"] == "zp_routes_control" && r["expect_fail"] == true));
}

#[test]
fn identity_tau_matches_closed_form() {
    let o = mcrys(&["compute", "tau", "--g", "identity", "--K", "1", "--t-deg", "2", "--q-order", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // exp(-t_1 tbar_1) = 1 - t_1 tbar_1 + ...
    assert!(text.contains("1 1,0,0,-1"), "{text}");
    assert!(text.contains("0 0,0,0,1"), "{text}");
}
