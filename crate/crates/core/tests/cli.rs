use std::process::{Command, Output};

use mdi::bench::{parse_csv, Status};

fn mdi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn integrate_prints_one_csv_row() {
    let o = mdi(&["integrate", "--family", "gauss", "--d", "10", "--N", "11", "--m", "1", "--r", "simpson"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = parse_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0].rel_error.unwrap() - 7.9046e-6).abs() < 5e-11);
}

#[test]
fn failed_single_run_exits_nonzero() {
    let o = mdi(&["integrate", "--expr", "exp(x1*x2*x3*x4*x5*x6)", "--budget", "1000"]);
    assert!(!o.status.success());
    let rows = parse_csv(&stdout(&o)).unwrap();
    assert!(rows[0].status.is_failed());
}

#[test]
fn sweep_survives_failures_and_handles_ranges() {
    let o = mdi(&["sweep", "--method", "stp", "--family", "gauss", "--axis", "d", "--values", "2,4,9"]);
    assert!(o.status.success());
    let rows = parse_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![2, 4, 9]);
    assert!(rows[2].status.is_failed());

    let o = mdi(&["sweep", "--family", "alt_exp", "--axis", "d", "--values", "100:300:100", "--N", "7", "--parallel-sweep"]);
    let rows = parse_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.status == Status::Contended));

    let o = mdi(&["sweep", "--family", "alt_exp", "--axis", "d", "--values", ""]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = mdi(&["sweep", "--family", "alt_exp", "--axis", "d", "--values", "5,3"]);
    assert!(!o.status.success());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults for this run\nfamily = prod_rational\nd = 5\nN = 21\nr = trap\n").unwrap();
    let out = dir.path().join("out.csv");
    let o = mdi(&["integrate", "--config", cfg.to_str().unwrap(), "--N", "11", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = parse_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((rows[0].family.as_str(), rows[0].d, rows[0].n), ("prod_rational", 5, Some(11)));
    assert_eq!(rows[0].r.unwrap().number(), 1);
}

#[test]
fn fit_from_points_and_from_csv() {
    let o = mdi(&["fit", "--points", "1:2,2:16,3:54,4:128"]);
    let text = stdout(&o);
    let line: Vec<f64> = text.lines().nth(1).unwrap().split(',').take(3).map(|f| f.parse().unwrap()).collect();
    assert!((line[0] - 2.0).abs() < 1e-9 && (line[1] - 3.0).abs() < 1e-9 && (line[2] - 1.0).abs() < 1e-12);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let o = mdi(&["sweep", "--family", "gauss", "--axis", "d", "--values", "100,200,300,400", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let o = mdi(&["fit", "--input", csv.to_str().unwrap(), "--x", "d", "--format", "markdown"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("R-square"));
}

#[test]
fn tables_list_and_run() {
    let o = mdi(&["tables", "--list"]);
    assert!(stdout(&o).lines().any(|l| l == "t17"));
    let o = mdi(&["tables", "t13", "--format", "markdown", "--repetitions", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2.6479e-12"));
    let o = mdi(&["tables", "t99"]);
    assert!(!o.status.success());
}

#[test]
fn oracle_check_passes_and_domains_apply() {
    let o = mdi(&["oracle-check", "--family", "cos_sum", "--d", "4", "--N", "6", "--m", "2", "--r", "gauss2", "--domain=-1,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).trim_end().ends_with("true"));
    let o = mdi(&["integrate", "--expr", "x1*x2", "--domain", "0,2", "--domain", "0,3", "--r", "2"]);
    let rows = parse_csv(&stdout(&o)).unwrap();
    assert!((rows[0].value.unwrap() - 9.0).abs() < 1e-12);
    assert!((rows[0].reference.unwrap() - 9.0).abs() < 1e-9);
}

#[test]
fn bad_arguments_are_rejected() {
    assert!(!mdi(&["integrate", "--family", "nope"]).status.success());
    assert!(!mdi(&["integrate", "--family", "gauss"]).status.success());
    assert!(!mdi(&["integrate", "--family", "gauss", "--d", "3", "--N", "4"]).status.success());
    assert!(!mdi(&["integrate", "--expr", "exp(x1"]).status.success());
}
