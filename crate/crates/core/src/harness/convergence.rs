use crate::error::{Error, Result};
use crate::problems::ControlProblem;
use crate::solver::{self, SolverConfig};

use super::report::exact_solution;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub dt: f64,
    pub dx: f64,
    /// Sup error at the final time on the problem's error window.
    pub sup_error: f64,
    /// `sup_error / (√Δt + Δx/Δt)`.
    pub ratio: f64,
}

/// Solves on the schedule `Δt_k = Δt/2^k`, `Δx_k = Δx/4^k` for
/// `k = 0..levels` and records the final-time error of each level.
pub fn convergence_study(
    problem: &ControlProblem,
    base: &SolverConfig,
    levels: usize,
) -> Result<Vec<ConvergenceRow>> {
    if !problem.has_analytic() {
        return Err(Error::NoAnalyticSolution(problem.name().to_owned()));
    }
    (0..levels)
        .map(|k| {
            let mut cfg = base.clone();
            cfg.dt = base.dt / 2f64.powi(k as i32);
            cfg.dx = base.dx / 4f64.powi(k as i32);
            let traj = solver::solve(problem, &cfg)?;
            let t = traj.time(traj.steps.len() - 1);
            let exact = exact_solution(problem, traj.grid, t).expect("checked above");
            let sup_error = traj
                .final_value()?
                .sup_distance(&exact, Some(problem.error_window()))?;
            Ok(ConvergenceRow {
                dt: cfg.dt,
                dx: cfg.dx,
                sup_error,
                ratio: sup_error / (cfg.dt.sqrt() + cfg.dx / cfg.dt),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::falcone2;
    use crate::semimodule::Interval;

    #[test]
    fn schedule_and_ratio() {
        let prob = falcone2();
        let mut cfg = SolverConfig::for_problem(&prob);
        cfg.dt = 0.1;
        cfg.dx = 0.2;
        cfg.horizon = 0.2;
        let rows = convergence_study(&prob, &cfg, 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[1].dt, rows[1].dx), (0.05, 0.05));
        for r in &rows {
            let expected = r.sup_error / (r.dt.sqrt() + r.dx / r.dt);
            assert_eq!(r.ratio, expected);
        }
    }

    #[test]
    fn requires_analytic_solution() {
        let dom = Interval::symmetric(1.0).unwrap();
        let prob = ControlProblem::new("plain", dom, dom);
        let cfg = SolverConfig::for_problem(&prob);
        assert!(matches!(
            convergence_study(&prob, &cfg, 1),
            Err(Error::NoAnalyticSolution(_))
        ));
    }
}
