use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maxplus_fem::harness::{
    convergence_study, exact_solution, export_csv, projection_diagnostics, run_solve, RunSettings,
    DEFAULT_INF_CAP,
};
use maxplus_fem::solver::{primal_basis, test_basis};
use maxplus_fem::{Error, Result};

const THREADS_VAR: &str = "TROPICAL_HJ_THREADS";

/// Max-plus finite element solver for 1-D optimal control problems.
#[derive(Parser)]
#[command(name = "maxplus-fem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and report errors per time step.
    Solve(RunArgs),
    /// Refine dt by 2 and dx by 4 per level and tabulate the final error.
    Converge(RunArgs),
    /// Projection errors of the exact solution on the trial and test spaces.
    Diagnose(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// lq, distance, falcone1 or falcone2
    #[arg(long)]
    problem: Option<String>,
    /// fem-tilde, fem-tilde2, fem-dual, fm or limit
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    dx: Option<f64>,
    /// Horizon
    #[arg(long = "T")]
    horizon: Option<f64>,
    /// Trial element parameter
    #[arg(long)]
    c: Option<f64>,
    /// Test element slope (or parameter for quadratic test elements)
    #[arg(long = "A")]
    a_test: Option<f64>,
    /// Half-width of the domain for lq, Lipschitz bound otherwise
    #[arg(long = "L")]
    l: Option<f64>,
    /// LQ coefficient
    #[arg(long = "a")]
    lq_a: Option<f64>,
    #[arg(long)]
    fine_factor: Option<usize>,
    /// lipschitz or quadratic
    #[arg(long)]
    test_kind: Option<String>,
    /// Refinement levels for `converge`
    #[arg(long)]
    levels: Option<usize>,
    /// CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value settings file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl RunArgs {
    fn settings(&self) -> Result<RunSettings> {
        let base = match &self.config {
            Some(path) => RunSettings::from_kv_str(&std::fs::read_to_string(path)?)?,
            None => RunSettings::default(),
        };
        Ok(base.overlay(RunSettings {
            problem: self.problem.clone(),
            method: self.method.clone(),
            dt: self.dt,
            dx: self.dx,
            horizon: self.horizon,
            c: self.c,
            a_test: self.a_test,
            l: self.l,
            lq_a: self.lq_a,
            fine_factor: self.fine_factor,
            test_kind: self.test_kind.clone(),
            levels: self.levels,
            out: self.out.clone(),
        }))
    }
}

fn solve(s: &RunSettings) -> Result<()> {
    let (problem, cfg) = s.resolve()?;
    let outcome = run_solve(&problem, &cfg, true)?;
    println!("{}", outcome.report);
    if let Some(path) = &s.out {
        export_csv(
            path,
            &outcome.final_value,
            outcome.exact.as_ref(),
            DEFAULT_INF_CAP,
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn converge(s: &RunSettings) -> Result<()> {
    let (problem, cfg) = s.resolve()?;
    let rows = convergence_study(&problem, &cfg, s.levels.unwrap_or(3))?;
    println!("problem: {}", problem.name());
    println!("config: {cfg}");
    println!(
        "{:>12} {:>12} {:>14} {:>12}",
        "dt", "dx", "sup_error", "ratio"
    );
    for r in &rows {
        println!(
            "{:>12} {:>12} {:>14.6e} {:>12.6}",
            r.dt, r.dx, r.sup_error, r.ratio
        );
    }
    if let Some(path) = &s.out {
        let mut text = String::from("dt,dx,sup_error,ratio\n");
        for r in &rows {
            text.push_str(&format!(
                "{:?},{:?},{:?},{:?}\n",
                r.dt, r.dx, r.sup_error, r.ratio
            ));
        }
        std::fs::write(path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn diagnose(s: &RunSettings) -> Result<()> {
    let (problem, cfg) = s.resolve()?;
    let grid = cfg.fine_grid(problem.domain())?;
    let v = exact_solution(&problem, grid, cfg.horizon)
        .ok_or_else(|| Error::NoAnalyticSolution(problem.name().to_owned()))?;
    let trial = primal_basis(&problem, &cfg)?;
    let test = test_basis(&problem, &cfg)?;
    let d = projection_diagnostics(&v, &trial, &test, Some(problem.error_window()))?;
    println!("problem: {}", problem.name());
    println!("config: {cfg}");
    println!("projection_image_error: {:.6e}", d.image);
    println!("projection_dual_error: {:.6e}", d.dual);
    Ok(())
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::MissingSetting(_)
            | Error::UnknownName { .. }
            | Error::Parse(_)
            | Error::InvalidParameter { .. }
    )
}

fn init_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .map_err(|_| format!("{THREADS_VAR} must be a thread count, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let (Command::Solve(args) | Command::Converge(args) | Command::Diagnose(args)) = &cli.command;
    let result = args.settings().and_then(|s| match cli.command {
        Command::Solve(_) => solve(&s),
        Command::Converge(_) => converge(&s),
        Command::Diagnose(_) => diagnose(&s),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
