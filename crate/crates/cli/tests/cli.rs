use std::process::{Command, Output};

use approxsym_cli::report::{Report, ReportKind, Status};

fn approxsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_approxsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn csv_rows(s: &str) -> Vec<(f64, f64, f64)> {
    s.lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect()
}

#[test]
fn tables_pass_and_injected_mismatch_is_an_erratum() {
    let ok = approxsym(&["tables", "commutator"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("49/49 entries match"));

    let bad = approxsym(&[
        "tables",
        "adjoint",
        "--inject-mismatch",
        "2,3",
        "--format",
        "json",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    let report = Report::from_json(&stdout(&bad)).unwrap();
    assert_eq!(report.payload["matched"], 48);
    assert_eq!(report.payload["mismatches"][0]["row"], 2);
    assert_eq!(report.payload["mismatches"][0]["column"], 3);
}

#[test]
fn json_reports_round_trip_and_are_deterministic() {
    let a = stdout(&approxsym(&["optimal", "--format", "json"]));
    let b = stdout(&approxsym(&["optimal", "--format", "json"]));
    assert_eq!(a, b);
    let report = Report::from_json(&a).unwrap();
    assert_eq!(report.kind, ReportKind::Optimal);
    assert_eq!(report.status(), Status::Pass);
    assert_eq!(report.payload["strata"][0]["name"], "V1'");
    assert_eq!(report.to_json().trim(), a.trim());
}

#[test]
fn symmetries_reject_degree_zero() {
    let o = approxsym(&["symmetries", "kdv", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--degree"));
}

#[test]
fn kdv_saturates_at_degree_one() {
    let o = approxsym(&["symmetries", "kdv", "--degree", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.payload["dimension"], 4);
}

#[test]
fn gardner_report_surfaces_the_stability_constraint() {
    let o = approxsym(&["symmetries", "gardner", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("C4 = 0"));
    assert!(text.contains("scaling not stable"));
}

#[test]
fn galilean_report_flags_errata() {
    let o = approxsym(&["galilean"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("ERRATUM derivative in the reduced equation"));
    assert!(!text.contains("FAIL "));
}

#[test]
fn grid_csv_header_and_values() {
    let o = approxsym(&[
        "grid",
        "--solution",
        "galilean-unperturbed",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("x,t,w\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 61 * 30);
    // t-major: the first 61 rows share t = 0.1.
    assert!(rows[..61].iter().all(|r| r.1 == 0.1));
    let at_origin = rows.iter().find(|r| r.0 == 0.0 && r.1 == 0.1).unwrap();
    assert!((at_origin.2 - 1.0 / 0.6).abs() < 1e-12);
    // x = c = 1 makes the numerator vanish.
    assert!(rows.iter().filter(|r| r.0 == 1.0).all(|r| r.2 == 0.0));
}

#[test]
fn approximate_grid_at_zero_eps_matches_unperturbed() {
    let a = approxsym(&[
        "grid",
        "--solution",
        "galilean-unperturbed",
        "--eps",
        "0",
        "--format",
        "csv",
    ]);
    let b = approxsym(&[
        "grid",
        "--solution",
        "galilean-approximate",
        "--eps",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn grid_rejects_t_range_through_zero() {
    let o = approxsym(&["grid", "--t-range", "-1,1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exclude 0"));
}

#[test]
fn linear_solution_scales_quadratically() {
    let o = approxsym(&[
        "residual-scaling",
        "--solution",
        "linear",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    // sup over |x| <= 3 of 6 eps^2 |x| + 6 eps^4 x^2 is attained at |x| = 3.
    let sup = |e: f64| 18.0 * e * e + 54.0 * e.powi(4);
    for (row, e) in report.payload["rows"]
        .as_array()
        .unwrap()
        .iter()
        .zip([0.1, 0.05, 0.025])
    {
        let got = row["sup_residual"].as_f64().unwrap();
        assert!((got - sup(e)).abs() < 1e-12 * sup(e), "{got} vs {}", sup(e));
    }
}

#[test]
fn zero_eps_gives_a_zero_residual_row() {
    let o = approxsym(&[
        "residual-scaling",
        "--t-range",
        "1,3",
        "--eps-list",
        "0.1,0.05,0",
        "--format",
        "json",
    ]);
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.payload["rows"][2]["sup_residual"], 0.0);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn residual_scaling_rejects_increasing_eps() {
    let o = approxsym(&["residual-scaling", "--eps-list", "0.05,0.1"]);
    assert_eq!(o.status.code(), Some(1));
}
