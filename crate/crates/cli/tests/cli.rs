use std::process::{Command, Output};

use ncis_core::{parse_element, parse_tensor};

fn ncis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncis")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

#[test]
fn double_bracket_of_generators() {
    let o = ncis(&["bracket", "u", "v", "--mode", "double"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-v*u (x) 1");
    assert_eq!(parse_tensor(&stdout(&o)).unwrap(), parse_tensor("-v*u (x) 1").unwrap());
}

#[test]
fn loday_bracket_gives_the_equation_of_motion() {
    let o = ncis(&["bracket", "u+v+u^-1+v^-1+u^-1*v^-1", "u", "--mode", "loday"]);
    assert!(o.status.success());
    assert_eq!(parse_element(&stdout(&o)).unwrap(), parse_element("u*v - u*v^-1 - v^-1").unwrap());
    assert_eq!(stdout(&ncis(&["bracket", "1", "u"])), "0");
}

#[test]
fn flow_coefficients() {
    let o = ncis(&["--json", "flow", "h", "c", "--order", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["u*v*u^-1*v^-1", "0", "0", "0"]));
    let o = ncis(&["--json", "flow", "h", "u"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = parse_element(v["coefficients"][1].as_str().unwrap()).unwrap();
    assert_eq!(d, parse_element("u*v - u*v^-1 - v^-1").unwrap());
}

#[test]
fn parse_errors_exit_two() {
    let o = ncis(&["bracket", "u*(", "v"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(ncis(&["bracket", "w", "v"]).status.code(), Some(2));
    assert_eq!(ncis(&["verify", "nosuch"]).status.code(), Some(2));
}

#[test]
fn verify_passing_suites() {
    for suite in ["quadruple", "jacobi", "skew"] {
        let o = ncis(&["--json", "verify", suite, "--samples", "50", "--max-len", "4", "--seed", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["config"]["seed"], 3);
        for c in v["checks"].as_array().unwrap() {
            assert_eq!(c["max_residual_terms"], 0);
            assert!(c["elapsed_ms"].is_number());
        }
    }
}

#[test]
fn verify_lax_reports_the_failing_orientation() {
    let o = ncis(&["verify", "lax", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL lax_pair"));
    assert!(text.contains("counterexample"));
    assert!(text.contains("PASS trace_integrals"));
}

#[test]
fn guard_exits_three() {
    let o = ncis(&["verify", "involution", "--involution-degree", "12"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_ncis"))
        .args(["span", "--kmax", "2"])
        .env("NCIS_MAX_TERMS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn span_members() {
    let o = ncis(&["--json", "span", "--kmax", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["member"], true);
    }
}

#[test]
fn simulate_small_run_to_file() {
    let dir = std::env::temp_dir().join(format!("ncis-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("sim.json");
    let o = ncis(&[
        "--json", "-o", out.to_str().unwrap(), "simulate", "--n", "2", "--t", "0.2", "--dt", "0.01", "--seed", "4",
        "--lambda", "1,0",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["n"], 2);
    assert_eq!(v["config"]["seed"], 4);
    assert_eq!(v["conservation"]["lax_spectrum"].as_array().unwrap().len(), 1);
    assert!(v["conservation"]["max_drift"].as_f64().unwrap() < 1e-6);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(ncis(&["simulate", "--dt", "-1"]).status.code(), Some(2));
}

#[test]
fn eval_and_projection() {
    let o = ncis(&["--json", "eval", "u*v*u^-1 + 2/3", "--project", "--matrix", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_form"], "2/3 + u*v*u^-1");
    assert_eq!(v["projection"]["v"], "1");
    assert_eq!(v["matrix"]["entries"].as_array().unwrap().len(), 2);
}
