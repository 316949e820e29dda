use std::process::{Command, Output};

use walker_core::densities::density_odd_dim;
use walker_core::numcore::{int, parse_rat, BigRat};

fn walker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walker")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV output, header comments and column line removed.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn moments_table() {
    let o = walker(&["moments", "--steps", "4", "--dim", "4", "--upto", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# version: "));
    assert!(text.contains("# precision: "));
    let vals: Vec<String> = rows(&text).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(vals, ["1", "4", "22", "148", "1144"]);
}

#[test]
fn fractional_moments_round_trip() {
    let o = walker(&["moments", "--steps", "3", "--dim", "6", "--upto", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let back: Vec<BigRat> = v["rows"].as_array().unwrap().iter().map(|r| parse_rat(r["value"].as_str().unwrap()).unwrap()).collect();
    assert_eq!(back[3], parse_rat("139/3").unwrap());
    assert_eq!(v["meta"]["dim"], 6);
}

#[test]
fn odd_dimension_density_grid_is_exact() {
    let o = walker(&["density", "--steps", "3", "--dim", "5", "--grid", "0", "3", "7"]);
    assert!(o.status.success());
    let p = density_odd_dim(3, 2).unwrap();
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 7);
    for row in r {
        let x = parse_rat(&row[0]).unwrap();
        let v = parse_rat(&row[1]).unwrap();
        let want = if x == int(0) || x == int(3) { int(0) } else { p.eval_rat(&x).unwrap() };
        assert_eq!(v, want, "x = {}", row[0]);
        assert_eq!(row[2], "piecewise-exact");
    }
}

#[test]
fn kluyver_cdf_and_suite() {
    let o = walker(&["cdf", "--steps", "3", "--x", "1"]);
    let r = rows(&stdout(&o));
    assert!((r[0][1].parse::<f64>().unwrap() - 0.25).abs() < 1e-10);
    let o = walker(&["verify", "--suite", "kluyver"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[PASS]  7."));
}

#[test]
fn closed_moment_prints_combination() {
    let o = walker(&["moment", "--steps", "3", "--dim", "4", "--s", "1", "--closed"]);
    let r = rows(&stdout(&o));
    assert_eq!(r[0][1], "68/75*A + 52/7*1/(pi^2 A)");
    let q = rows(&stdout(&walker(&["moment", "--steps", "3", "--dim", "4", "--s", "1"])));
    assert_eq!(q[0][3], "quadrature");
    assert!((r[0][2].parse::<f64>().unwrap() - q[0][2].parse::<f64>().unwrap()).abs() < 1e-8);
}

#[test]
fn usage_and_computation_errors() {
    let o = walker(&["moments", "--steps", "3", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
    let o = walker(&["gf", "--kind", "w3", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    let e: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"], "domain");
    let o = walker(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_is_deterministic() {
    let args = ["simulate", "--steps", "3", "--dim", "3", "--samples", "20000", "--seed", "5", "--s", "1,2", "--ks", "closed"];
    let a = stdout(&walker(&args));
    assert_eq!(a, stdout(&walker(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["stats"]["samples"], 20000);
    assert!(v["meta"]["rng"].as_str().unwrap().contains("ChaCha8"));
    assert!(v["ks"]["pass"].as_bool().unwrap());
    let m2 = v["stats"]["moment_estimates"]["2"]["mean"].as_f64().unwrap();
    assert!((m2 - 3.0).abs() < 0.05);
}

#[test]
fn gf_and_constants() {
    let o = walker(&["gf", "--kind", "w4dim4", "--dim", "4", "--x", "0.02"]);
    let r = rows(&stdout(&o));
    assert!(r[0][3].parse::<f64>().unwrap() <= 1e-8);
    let o = walker(&["constants"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["name"] == "A"));
}

#[test]
fn precision_env_controls_digits() {
    let o = Command::new(env!("CARGO_BIN_EXE_walker"))
        .args(["cdf", "--steps", "2", "--x", "1"])
        .env("WALKER_PRECISION", "6")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert!(text.contains("# precision: 6"));
    assert_eq!(rows(&text)[0][1], "3.33333e-1");
}
