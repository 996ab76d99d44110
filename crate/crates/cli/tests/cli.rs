use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn wallspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallspace")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn rows<'a>(r: &'a Value, suite: &str) -> Vec<&'a Value> {
    r["rows"].as_array().unwrap().iter().filter(|row| row["suite"] == suite).collect()
}

const SMALL_VERIFY: &[&str] =
    &["verify-crofton", "--samples", "20000", "--pairs", "3", "--transforms", "5", "--instances", "4"];
const SMALL_CNK: &[&str] = &["cnk", "--configs", "10", "--triples", "50", "--instances", "3", "--samples", "20000"];

#[test]
fn estimate_c_reports_two_in_the_plane() {
    let out = wallspace(&["estimate-c", "--n", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let c = r["summary"]["c_hat"].as_f64().unwrap();
    assert!((c - 2.0).abs() < 0.01 * 2.0, "{c}");
    assert_eq!(r["summary"]["pass"], true);
    assert!(r["summary"]["c_halfwidth"].as_f64().unwrap() > 0.0);
    assert_eq!(r["config"]["seed"], 7);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    let points = rows(&r, "linearity").into_iter().filter(|row| row["case"] == "F(o,a_t o)").count();
    assert_eq!(points, 5);
}

#[test]
fn report_files_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = wallspace(&["estimate-c", "--n", "2", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    assert_eq!(x.last(), Some(&b'\n'));
}

#[test]
fn thread_count_does_not_change_reports() {
    for base in [SMALL_VERIFY, SMALL_CNK] {
        let run = |threads: &str| {
            let mut args = base.to_vec();
            args.extend(["--seed", "11", "--threads", threads]);
            wallspace(&args)
        };
        let (one, four) = (run("1"), run("4"));
        assert_eq!(one.status.code(), four.status.code());
        assert!(!one.stdout.is_empty());
        assert_eq!(one.stdout, four.stdout, "{}", base[0]);
    }
}

#[test]
fn csv_output_is_deterministic_too() {
    let args = ["estimate-c", "--n", "3", "--method", "monte-carlo", "--samples", "20000", "--format", "csv"];
    let (a, b) = (wallspace(&args), wallspace(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("suite,case,param,estimate,reference,deviation,stderr,tolerance,samples,method,pass\n"));
    assert!(text.contains("monte_carlo"));
}

#[test]
fn seed_changes_values_but_not_the_verdict() {
    let run = |seed: &str| report(&wallspace(&["estimate-c", "--method", "monte-carlo", "--seed", seed]));
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a["summary"]["pass"], true);
    assert_eq!(b["summary"]["pass"], true);
    assert_ne!(a["summary"]["c_hat"], b["summary"]["c_hat"]);
}

#[test]
fn dimension_one_is_a_usage_error() {
    let out = wallspace(&["estimate-c", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = 1"));
}

#[test]
fn overflow_regime_is_refused() {
    let out = wallspace(&["cnk", "--t-max", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("overflow"));
    let out = wallspace(&["sweep-unbounded", "--t-max", "1000"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_io_errors_exit_one() {
    for args in [
        vec!["estimate-c", "--bogus"],
        vec!["frobnicate"],
        vec!["estimate-c", "--t-grid", "1,0.5,2,4"],
        vec!["estimate-c", "--t-grid", "0,1,2,8"],
        vec!["estimate-c", "--n", "5", "--method", "quadrature"],
        vec!["estimate-c", "--samples", "10", "--method", "monte-carlo"],
        vec!["estimate-c", "--format", "xml"],
        vec!["cnk", "--points", "65"],
        vec!["verify-crofton", "--threads", "0"],
        vec!["estimate-c", "--out", "/nonexistent/dir/report.json"],
    ] {
        let out = wallspace(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let out = wallspace(&["estimate-c", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    for args in [vec!["--help"], vec!["--version"], vec!["cnk", "--help"]] {
        let out = wallspace(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn statistical_failure_exits_two() {
    // A wide dead zone drops walls near the points and biases F low.
    let out = wallspace(&["estimate-c", "--method", "monte-carlo", "--eps-side", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["summary"]["pass"], false);
    assert!(r["summary"]["failed_rows"].as_u64().unwrap() > 0);
}

#[test]
fn low_sample_runs_flag_wide_error_bars() {
    let out = wallspace(&["verify-crofton", "--samples", "1000", "--transforms", "10"]);
    assert!(matches!(out.status.code(), Some(0) | Some(2)));
    let r = report(&out);
    let warnings = r["summary"]["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("wide error bars")));
}

#[test]
fn two_points_defect_is_minus_their_distance() {
    let out = wallspace(&["cnk", "--points", "2", "--configs", "5", "--triples", "10", "--instances", "20"]);
    let r = report(&out);
    let sets: Vec<_> = rows(&r, "set_cnk").into_iter().filter(|row| row["case"] != "probe_excess").collect();
    assert_eq!(sets.len(), 5);
    for row in sets {
        let (d, reference) = (row["estimate"].as_f64().unwrap(), row["reference"].as_f64().unwrap());
        assert!(reference < 0.0);
        assert!((d - reference).abs() <= 1e-12 * reference.abs());
    }
}

#[test]
fn cnk_default_dimension_is_three_and_reports_defects() {
    let out = wallspace(SMALL_CNK);
    let r = report(&out);
    assert_eq!(r["config"]["n"], 3);
    let defect_max = r["summary"]["defect_max"].as_f64().unwrap();
    assert!(defect_max <= 0.0);
    let sweep = rows(&r, "unboundedness");
    assert!(sweep.iter().all(|row| row["pass"] == true));
    assert_eq!(sweep.last().unwrap()["case"], "monotone");
}

#[test]
fn duration_is_opt_in() {
    let plain = report(&wallspace(&["sweep-unbounded"]));
    assert!(plain["summary"].get("duration_seconds").is_none());
    let timed = report(&wallspace(&["sweep-unbounded", "--embed-duration"]));
    assert!(timed["summary"]["duration_seconds"].as_f64().unwrap() >= 0.0);
    let out = wallspace(&["sweep-unbounded"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains(" s"));
}

#[test]
fn library_entry_point_matches_the_binary() {
    let args = ["wallspace", "estimate-c", "--n", "2", "--seed", "7"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = wallspace::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, wallspace(&args[1..]).stdout);
}
