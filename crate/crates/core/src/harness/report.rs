use std::fmt;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::problems::ControlProblem;
use crate::semimodule::{GridFunction, GridSpec};
use crate::solver::{self, test_basis, CoefficientTrajectory, SolverConfig};

use super::diagnostics::{projection_diagnostics, ProjectionErrors};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepError {
    pub t: f64,
    pub sup_error: f64,
}

/// Everything a `solve` run prints.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub problem: String,
    pub config: SolverConfig,
    /// Sup error on the problem's error window after each step; empty when
    /// the problem has no analytic solution.
    pub step_errors: Vec<StepError>,
    pub final_error: Option<f64>,
    pub projection: Option<ProjectionErrors>,
    pub elapsed: Duration,
}

pub struct RunOutcome {
    pub report: RunReport,
    pub trajectory: CoefficientTrajectory,
    pub final_value: GridFunction,
    pub exact: Option<GridFunction>,
}

/// The analytic value function at time `t` sampled on `grid`, if known.
pub fn exact_solution(problem: &ControlProblem, grid: GridSpec, t: f64) -> Option<GridFunction> {
    if !problem.has_analytic() {
        return None;
    }
    Some(GridFunction::sample_f64(grid, |x| {
        problem.analytic(x, t).expect("checked above")
    }))
}

/// Solves, measures errors against the analytic solution at every step and,
/// if asked, runs the projection diagnostics on the exact final value.
pub fn run_solve(
    problem: &ControlProblem,
    cfg: &SolverConfig,
    with_diagnostics: bool,
) -> Result<RunOutcome> {
    let start = Instant::now();
    let trajectory = solver::solve(problem, cfg)?;
    let window = Some(problem.error_window());
    let mut step_errors = Vec::new();
    if problem.has_analytic() {
        for k in 1..trajectory.steps.len() {
            let t = trajectory.time(k);
            let exact = exact_solution(problem, trajectory.grid, t).expect("has analytic");
            let sup_error = trajectory.value_at(k)?.sup_distance(&exact, window)?;
            step_errors.push(StepError { t, sup_error });
        }
    }
    let final_value = trajectory.final_value()?;
    let t_final = trajectory.time(trajectory.steps.len() - 1);
    let exact = exact_solution(problem, trajectory.grid, t_final);
    let final_error = match &exact {
        Some(e) => Some(final_value.sup_distance(e, window)?),
        None => None,
    };
    let projection = match (&exact, with_diagnostics) {
        (Some(e), true) => Some(projection_diagnostics(
            e,
            &trajectory.basis,
            &test_basis(problem, cfg)?,
            window,
        )?),
        _ => None,
    };
    let report = RunReport {
        problem: problem.name().to_owned(),
        config: cfg.clone(),
        step_errors,
        final_error,
        projection,
        elapsed: start.elapsed(),
    };
    Ok(RunOutcome {
        report,
        trajectory,
        final_value,
        exact,
    })
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {}", self.problem)?;
        writeln!(f, "config: {}", self.config)?;
        if !self.step_errors.is_empty() {
            writeln!(f, "{:>12} {:>14}", "t", "sup_error")?;
            for e in &self.step_errors {
                writeln!(f, "{:>12.6} {:>14.6e}", e.t, e.sup_error)?;
            }
        }
        match self.final_error {
            Some(e) => writeln!(f, "final_error: {e:.6e}")?,
            None => writeln!(f, "final_error: n/a (no analytic solution)")?,
        }
        if let Some(p) = &self.projection {
            writeln!(f, "projection_image_error: {:.6e}", p.image)?;
            writeln!(f, "projection_dual_error: {:.6e}", p.dual)?;
        }
        write!(f, "elapsed: {:.3}s", self.elapsed.as_secs_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::falcone2;

    #[test]
    fn report_lists_every_step() {
        let prob = falcone2();
        let mut cfg = SolverConfig::for_problem(&prob);
        cfg.dx = 0.1;
        cfg.dt = 0.1;
        cfg.horizon = 0.3;
        let out = run_solve(&prob, &cfg, true).unwrap();
        assert_eq!(out.report.step_errors.len(), 3);
        assert_eq!(
            out.report.final_error,
            Some(out.report.step_errors[2].sup_error)
        );
        let text = out.report.to_string();
        assert!(text.starts_with("problem: falcone2\nconfig: method=fem-tilde2 dt=0.1 T=0.3"));
        assert!(text.contains("projection_dual_error"));
    }
}
