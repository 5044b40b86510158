use std::process::Command;

use malmquist::cli::{run, RunOutput};
use serde_json::Value;

fn cli(args: &[&str]) -> RunOutput {
    run(std::iter::once("malmquist").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, out.stdout)))
}

#[test]
fn classify_power_form() {
    let (code, v) = json(&["classify", "F^2 = f^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "T1c-power");
    assert_eq!(v["schema"], "malmquist-report/1");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["schema", "command", "input", "n", "p", "q", "d", "factor_structure", "trace", "canonical", "verdict", "params", "citations", "residual_summary", "notes"]
    );
}

#[test]
fn no_solution_exits_one_with_citation() {
    let (code, v) = json(&["classify", "F^2 = f^2/(f-1)"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "no-transcendental-meromorphic-solution");
    assert!(!v["citations"][0].as_str().unwrap().is_empty());
    let text = cli(&["classify", "F^2 = f^2/(f-1)"]);
    assert!(text.stdout.contains("citation:"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let out = cli(&["classify", "F^2 = f^3 +"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("position"), "{}", out.stderr);
    let out = cli(&["classify", "/nonexistent/equation.txt"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("cannot read input file"));
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["--tol", "0", "classify", "F^2 = f^3"]).code, 2);
    assert_eq!(cli(&["solve", "F^2 = f^3", "--grid", "0:1"]).code, 2);
    assert_eq!(cli(&["identities", "--case", "2c-42", "--p0", "0", "--q0", "1"]).code, 2);
}

#[test]
fn input_from_file() {
    let path = std::env::temp_dir().join(format!("malmquist-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "# gcd reduction\nF^4 = f^6\n").unwrap();
    let (code, v) = json(&["classify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "T1c-power");
    assert_eq!(v["canonical"], "F^2 = f^3");
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["--json", "solve", "F^2 = -4*f^2*(f^2-1)", "--grid", "0:1:3,0:1:2"][..],
        &["--json", "classify", "F^2 = 2*(f+1/2)^2*(f-1)/((f-1/2)^4*(f+1)^2)"][..],
    ] {
        assert_eq!(cli(args).stdout, cli(args).stdout);
    }
    let out = cli(&["--json", "solve", "F^2 = f^3"]).stdout;
    // every float carries 17 significant digits
    assert!(out.contains("1.0000000000000001e-1"), "{}", out);
}

#[test]
fn solve_then_verify_round_trip() {
    let (code, v) = json(&["solve", "F^2 = f^3", "--pi0", "0.1"]);
    assert_eq!(code, 0);
    assert_eq!(v["residual_summary"]["outcome"], "pass");
    let sol = serde_json::to_string(&v).unwrap();
    let (code, w) = json(&["verify", "F^2 = f^3", "--solution", &sol]);
    assert_eq!(code, 0);
    assert_eq!(w["residual_summary"]["outcome"], "pass");
    assert!(w["residual_summary"]["max_residual"].as_f64().unwrap() <= 1e-9);
    let (code, w) = json(&["verify", "F^2 = 3*f^3", "--solution", &sol]);
    assert_eq!(code, 1);
    assert_eq!(w["residual_summary"]["outcome"], "fail");
}

#[test]
fn verify_against_canonical_form() {
    // a square root takes F^4 = 4 f^6 down to n = 2 first, so the family fits the canonical form only
    let (_, v) = json(&["solve", "F^4 = 4*f^6"]);
    let sol = serde_json::to_string(&v["solution"]).unwrap();
    let (code, w) = json(&["verify", "F^4 = 4*f^6", "--canonical", "--solution", &sol]);
    assert_eq!(code, 0, "{}", w);
    assert_eq!(w["residual_summary"]["equation"], "canonical");
}

#[test]
fn solve_branch_selectors() {
    for extra in [&["--minus-i"][..], &["--negative-base"][..], &["--minus-i", "--negative-base"][..]] {
        let mut args = vec!["solve", "F^2 = -(1/2)*(2*f+1)^2*(f-1)"];
        args.extend_from_slice(extra);
        let (code, v) = json(&args);
        assert_eq!(code, 0);
        assert_eq!(v["residual_summary"]["outcome"], "pass", "{:?}", extra);
    }
    let (_, v) = json(&["solve", "F^2 = 2*(f+1/2)^2*(f-1)/((f-1/2)^4*(f+1)^2)", "--theta", "-1", "--sign", "-1", "--delta-seed", "0.9,0.2"]);
    assert_eq!(v["solution"]["family"], "delta-orbit");
    assert_eq!(v["residual_summary"]["outcome"], "pass");
}

#[test]
fn solve_without_closed_form() {
    let (code, v) = json(&["solve", "F^2 = (f^2-1)/f^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "out-of-scope-d-equals-n");
    assert!(v["solution"].is_null());
}

#[test]
fn solve_samples_grid() {
    let (_, v) = json(&["solve", "F^3 = 32/f^2", "--pi0", "0", "--grid", "0:1:2,0:0:1"]);
    let s = v["samples"].as_array().unwrap();
    assert_eq!(s.len(), 2);
    assert!((s[1]["f"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn identities_eta_instance() {
    let (code, v) = json(&["identities", "--case", "2c-6", "--p0", "0", "--q0", "1"]);
    assert_eq!(code, 0);
    let inst = v["instances"].as_array().unwrap();
    assert!(!inst.is_empty());
    assert!(inst.iter().all(|i| i["verified"] == true));
    assert!(inst.iter().any(|i| i["slots"]["Q0"]["base"] == "f^3 + (-1/2 + 1/2*i*sqrt3)"), "{}", v);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_malmquist");
    let st = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = st(&["classify", "F^2 = f^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("verdict: T1c-power"));
    assert_eq!(st(&["classify", "F^2 = f^2/(f-1)"]).status.code(), Some(1));
    let o = st(&["classify", "F^2 = (f"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
}
