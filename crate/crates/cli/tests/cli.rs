use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxplus-fem"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const COARSE: [&str; 8] = [
    "--problem",
    "falcone2",
    "--dt",
    "0.1",
    "--dx",
    "0.1",
    "--T",
    "0.3",
];

#[test]
fn solve_reports_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let mut args = vec!["solve"];
    args.extend(COARSE);
    args.extend(["--out", out.to_str().unwrap()]);
    let o = run(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("problem: falcone2"));
    assert!(text.contains("config: method=fem-tilde2 dt=0.1 T=0.3 dx=0.1"));
    assert!(text.contains("final_error:"));
    assert!(text.contains("projection_image_error:"));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,v_approx,v_exact,abs_err"));
    assert_eq!(lines.next().unwrap().split(',').count(), 4);
}

#[test]
fn solve_is_deterministic() {
    let mut args = vec!["solve"];
    args.extend(COARSE);
    args.extend(["--method", "fem-dual"]);
    let strip = |o: Output| {
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with("elapsed"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn missing_dt_is_a_usage_error() {
    let o = run(&["solve", "--problem", "falcone1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dt"));
}

#[test]
fn unknown_names_list_the_valid_set() {
    let o = run(&["solve", "--problem", "heat", "--dt", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("lq, distance, falcone1, falcone2"));
    let o = run(&[
        "solve",
        "--problem",
        "lq",
        "--dt",
        "0.1",
        "--method",
        "euler",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fem-tilde2"));
}

#[test]
fn bad_values_and_flags_exit_2() {
    let o = run(&["solve", "--problem", "falcone1", "--dt", "0.3", "--T", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["solve", "--dt", "fast"]).status.code(), Some(2));
    assert_eq!(run(&["integrate"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let mut args = vec!["solve"];
    args.extend(COARSE);
    args.extend(["--out", "/nonexistent-dir/v.csv"]);
    assert_eq!(run(&args).status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# coarse run\nproblem = falcone1\ndt = 0.1\ndx = 0.1\nT = 0.5\n",
    )
    .unwrap();
    let o = run(&["solve", "--config", cfg.to_str().unwrap(), "--T", "0.2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("problem: falcone1"));
    assert!(text.contains("dt=0.1 T=0.2 dx=0.1"));
}

#[test]
fn converge_prints_one_row_per_level() {
    let mut args = vec!["converge"];
    args.extend(COARSE);
    args.extend(["--levels", "2"]);
    let o = run(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.contains("sup_error"))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].trim_start().starts_with("0.05"));
}

#[test]
fn diagnose_prints_both_projection_errors() {
    let mut args = vec!["diagnose"];
    args.extend(COARSE);
    let o = run(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("projection_image_error:"));
    assert!(text.contains("projection_dual_error:"));
}

#[test]
fn thread_count_from_environment() {
    let mut args = vec!["solve"];
    args.extend(COARSE);
    let o = Command::new(env!("CARGO_BIN_EXE_maxplus-fem"))
        .args(&args)
        .env("TROPICAL_HJ_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_maxplus-fem"))
        .args(&args)
        .env("TROPICAL_HJ_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
