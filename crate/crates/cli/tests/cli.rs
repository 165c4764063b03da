use std::process::{Command, Output};

use glshp::{example1, solve, write_problem, FracOrders64, SolveOptions64};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glshp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn csv_rows(out: &Output) -> (String, Vec<Vec<f64>>) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn coeff(report: &Value, name: &str) -> f64 {
    report["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap()["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn solve_example1_classical() {
    let out = run(&["solve", "--example", "1", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!((coeff(&r, "K0") - 1.0).abs() < 1e-8);
    assert!(coeff(&r, "K2").abs() < 1e-8);
    assert_eq!(coeff(&r, "K1"), 0.5);
    assert!(r["jvalue"].as_f64().unwrap() <= 1e-18);
    assert_eq!(r["converged"], true);
}

#[test]
fn solve_example3_grid_corner() {
    let out = run(&[
        "solve",
        "--example",
        "3",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--grid",
        "5x5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, "x,t,u,v");
    assert_eq!(rows.len(), 25);
    let last = rows.last().unwrap();
    assert_eq!(&last[..2], &[1.0, 1.0]);
    assert!((last[2] - 2.0).abs() < 1e-12 && (last[3] - 1.0).abs() < 1e-12);
    // t is the outer loop
    assert_eq!(&rows[1][..2], &[0.25, 0.0]);
}

#[test]
fn solve_fractional_dominates_hpm_start() {
    let out = run(&["solve", "--example", "1", "--alpha", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["jvalue"].as_f64().unwrap() <= r["j_hpm"].as_f64().unwrap());
}

#[test]
fn grid_values_equal_library_evaluation() {
    let out = run(&["solve", "--example", "1", "--alpha", "0.93", "--grid", "7x4"]);
    let (_, rows) = csv_rows(&out);
    let p = example1::<f64>().with_orders(FracOrders64::new(0.93, 0.93).unwrap());
    let sol = solve(&p, &SolveOptions64::default()).unwrap();
    for row in rows {
        let u = sol.eval(row[0], row[1]).unwrap()[0];
        assert_eq!(u.to_bits(), row[2].to_bits());
    }
}

#[test]
fn json_report_can_embed_the_grid_and_epsilon() {
    let out = run(&[
        "solve",
        "--example",
        "2",
        "--alpha",
        "0.95",
        "--grid",
        "3x3",
        "--format",
        "json",
        "--epsilon",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["grid"]["columns"], serde_json::json!(["x", "t", "u"]));
    assert_eq!(r["grid"]["rows"].as_array().unwrap().len(), 9);
    let eps = &r["epsilon"];
    assert_eq!(eps["epsilon"], 0.5);
    assert!(eps["weak_value"].as_f64().unwrap() <= eps["sup"].as_f64().unwrap().powi(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "solve",
        "--example",
        "3",
        "--alpha",
        "0.9",
        "--beta",
        "0.8",
        "--epsilon",
        "0.1",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let other_seed = run(&["solve", "--example", "1", "--alpha", "0.9", "--seed", "7"]);
    assert_eq!(other_seed.status.code(), Some(0));
}

#[test]
fn wronskian_checkpoints() {
    let out = run(&[
        "wronskian",
        "--example",
        "1",
        "--alpha",
        "1",
        "--x",
        "0.2",
        "--t",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["certificates"][0];
    let value = c["value"].as_f64().unwrap();
    assert!((value - c["closed_form"]["derived"].as_f64().unwrap()).abs() < 1e-9);
    assert!((c["closed_form"]["reference"].as_f64().unwrap() + 0.102).abs() < 1e-12);
    assert_eq!(c["matrix"].as_array().unwrap().len(), 3);

    let out = run(&[
        "wronskian",
        "--example",
        "2",
        "--alpha",
        "1",
        "--x",
        "0.3",
        "--t",
        "0.4",
    ]);
    let c = &json(&out)["certificates"][0];
    assert!((c["closed_form"]["reference"].as_f64().unwrap() - 0.0444).abs() < 1e-12);
    assert!((c["value"].as_f64().unwrap() - 0.0046125).abs() < 1e-12);
}

#[test]
fn wronskian_coupled_defaults_to_witness() {
    let out = run(&["wronskian", "--example", "3", "--alpha", "0.9", "--beta", "0.8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let certs = r["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    assert_eq!(certs[1]["order"], 0.8);
    assert_eq!(certs[0]["x"], 0.2);
}

#[test]
fn wronskian_at_origin_fails_certificate() {
    let out = run(&["wronskian", "--example", "1", "--alpha", "1", "--x", "0", "--t", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["certificates"][0]["value"], 0.0);
}

#[test]
fn compare_sweep() {
    let out = run(&["compare", "--example", "1", "--sweep", "0.89:1.0:0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, "alpha,J_hpm,J_glshp,ratio");
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert!(r[2] <= r[1]);
    }
    let last = rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!(last[2] <= 1e-18 && last[3] <= 1e-15);

    let out = run(&["compare", "--example", "3", "--sweep", "0.95:0.95:0.01"]);
    assert_eq!(csv_rows(&out).1.len(), 1);
}

#[test]
fn problem_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex1.glshp");
    let p = example1::<f64>().with_orders(FracOrders64::new(0.9, 1.0).unwrap());
    std::fs::write(&path, write_problem(&p)).unwrap();
    let from_file = json(&run(&["solve", "--problem", path.to_str().unwrap()]));
    let builtin = json(&run(&["solve", "--example", "1", "--alpha", "0.9", "--beta", "1"]));
    assert_eq!(from_file["coefficients"], builtin["coefficients"]);
    assert_eq!(from_file["alpha"], 0.9);

    let out_path = dir.path().join("report.json");
    let out = run(&[
        "solve",
        "--problem",
        path.to_str().unwrap(),
        "--alpha",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["alpha"], 1.0);
}

#[test]
fn bad_problem_files_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = write_problem(&example1::<f64>());

    let path = dir.path().join("zero.glshp");
    std::fs::write(&path, text.replace("alpha = 1.0", "alpha = 0.0")).unwrap();
    let out = run(&["solve", "--problem", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));

    let path = dir.path().join("tag.glshp");
    std::fs::write(&path, text.replace("u*u_tt", "w*u_tt")).unwrap();
    let out = run(&["solve", "--problem", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("w*u_tt"));
}

#[test]
fn invalid_flags() {
    assert_eq!(run(&["solve", "--example", "1", "--alpha", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["solve", "--example", "1", "--x", "2", "--t", "0.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["solve", "--example", "4"]).status.code(), Some(1));
    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(
        run(&["compare", "--example", "1", "--sweep", "0.5:0.4:0.1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn badly_scaled_problem_reports_no_convergence() {
    // J is of order 1e15, so roundoff keeps |grad J| far above 1e-12
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.glshp");
    std::fs::write(
        &path,
        "[orders]\nalpha = 0.9\n[forcing.u]\nf = 1e8 - 3e8 * x^(2) - 2e8 * t^(2)\n\
         [nonlinearity]\nu = -1 * u*u_tt\n[ic.u]\n0 = 1e4 * t^(2)\n",
    )
    .unwrap();
    let out = run(&["solve", "--problem", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["converged"], false);
    assert!(r["jvalue"].as_f64().unwrap() <= r["j_hpm"].as_f64().unwrap());
}
