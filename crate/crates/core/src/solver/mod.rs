//! Time stepping of the max-plus finite element method and its baselines.
//!
//! The method keeps `v_h^t = W_h λ^t` in the span of quadratic trial
//! elements and advances the coefficients by the maximal subsolution of
//! `⟨z_j, v_h^{t+Δt}⟩ ≤ ⟨z_j, S^Δt v_h^t⟩` over the test functions `z_j`:
//!
//! 1. build the trial basis `W_h` and test basis `Z_h`,
//! 2. assemble `A_h` exactly and `B_h` with one of the approximations,
//! 3. start from `λ^0 = W_h \ φ`,
//! 4. iterate `λ^{t+Δt} = A_h \ (B_h λ^t)`.

mod assembly;
mod config;
mod fleming;
mod recursion;

pub use assembly::{
    assemble_a, assemble_b_dual, assemble_b_tilde, assemble_b_tilde2, semigroup_tilde,
    AssembledOperators, SteppedElement,
};
pub use config::{Method, SolverConfig};
pub use fleming::{fm_matrix, fm_steps, limit_steps, stepped_samples};
pub use recursion::{initial_coefficients, step, step_game, CoefficientTrajectory};

use crate::elements::{build_primal_basis, build_test_basis, ElementBasis};
use crate::error::{invalid, Result};
use crate::problems::ControlProblem;
use crate::semimodule::GridSpec;

/// Trial basis of quadratic elements on the extended center grid.
pub fn primal_basis(problem: &ControlProblem, cfg: &SolverConfig) -> Result<ElementBasis> {
    build_primal_basis(cfg.c, cfg.dx, problem.half_width(), cfg.lipschitz)
}

pub fn test_basis(problem: &ControlProblem, cfg: &SolverConfig) -> Result<ElementBasis> {
    build_test_basis(cfg.test_kind, cfg.test_shape, cfg.dx, problem.half_width())
}

/// Builds both bases and assembles `A_h` and the `B_h` variant selected by
/// `cfg.method`.
pub fn assemble(problem: &ControlProblem, cfg: &SolverConfig) -> Result<AssembledOperators> {
    cfg.steps()?;
    let primal = primal_basis(problem, cfg)?;
    let test = test_basis(problem, cfg)?;
    let grid = cfg.fine_grid(problem.domain())?;
    let b = match cfg.method {
        Method::FemTilde => assemble_b_tilde(&test, &primal, problem, cfg.dt, &grid)?,
        Method::FemTilde2 => assemble_b_tilde2(&test, &primal, problem, cfg.dt, cfg.argmax_tol)?,
        Method::FemDual => assemble_b_dual(&test, &primal, problem, cfg.dt, &grid)?,
        Method::Fm | Method::Limit => {
            return Err(invalid(
                "method",
                format!("{} does not use test functions", cfg.method),
            ))
        }
    };
    let a = assemble_a(&test, &primal);
    Ok(AssembledOperators { a, b, primal, test })
}

/// Iterates `step` from `λ^0` for `steps` steps.
pub fn run_steps(
    ops: &AssembledOperators,
    lambda0: crate::maxplus::MaxPlusVector,
    steps: usize,
) -> Result<Vec<crate::maxplus::MaxPlusVector>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(lambda0);
    for _ in 0..steps {
        let next = step(ops, out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// Runs the method selected in `cfg` and returns every `λ^t`.
pub fn solve(problem: &ControlProblem, cfg: &SolverConfig) -> Result<CoefficientTrajectory> {
    match cfg.method {
        Method::Fm => fm_solve(problem, cfg),
        Method::Limit => limit_solve(problem, cfg),
        _ => {
            let ops = assemble(problem, cfg)?;
            solve_with(problem, cfg, &ops)
        }
    }
}

/// Like [`solve`] for the finite element methods, reusing assembled operators.
pub fn solve_with(
    problem: &ControlProblem,
    cfg: &SolverConfig,
    ops: &AssembledOperators,
) -> Result<CoefficientTrajectory> {
    let n = cfg.steps()?;
    let grid = cfg.fine_grid(problem.domain())?;
    let lambda0 = initial_coefficients(&ops.primal, |x| problem.terminal(x), &grid);
    Ok(CoefficientTrajectory {
        steps: run_steps(ops, lambda0, n)?,
        dt: cfg.dt,
        basis: ops.primal.clone(),
        grid,
    })
}

fn trial_setup(
    problem: &ControlProblem,
    cfg: &SolverConfig,
) -> Result<(usize, ElementBasis, GridSpec)> {
    let n = cfg.steps()?;
    let basis = primal_basis(problem, cfg)?;
    let grid = cfg.fine_grid(problem.domain())?;
    Ok((n, basis, grid))
}

/// Fleming–McEneaney recursion with the `[S^Δt w]~` approximation.
pub fn fm_solve(problem: &ControlProblem, cfg: &SolverConfig) -> Result<CoefficientTrajectory> {
    let (n, basis, grid) = trial_setup(problem, cfg)?;
    let mu0 = initial_coefficients(&basis, |x| problem.terminal(x), &grid);
    let transition = fm_matrix(&basis, problem, cfg.dt, &grid)?;
    Ok(CoefficientTrajectory {
        steps: fm_steps(&transition, mu0, n)?,
        dt: cfg.dt,
        basis,
        grid,
    })
}

/// Limit case of the finite element method (no test-space projection).
pub fn limit_solve(problem: &ControlProblem, cfg: &SolverConfig) -> Result<CoefficientTrajectory> {
    let (n, basis, grid) = trial_setup(problem, cfg)?;
    let lambda0 = initial_coefficients(&basis, |x| problem.terminal(x), &grid);
    let stepped = stepped_samples(&basis, problem, cfg.dt, &grid)?;
    Ok(CoefficientTrajectory {
        steps: limit_steps(&basis, &stepped, &grid, lambda0, n)?,
        dt: cfg.dt,
        basis,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxplus::MaxPlusScalar;
    use crate::problems::falcone2;
    use crate::semimodule::Interval;

    fn flat_problem() -> ControlProblem {
        let dom = Interval::symmetric(1.0).unwrap();
        ControlProblem::new("flat", dom, dom).with_lipschitz_bound(0.5)
    }

    #[test]
    fn zero_horizon_keeps_initial_coefficients() {
        let prob = falcone2();
        let mut cfg = SolverConfig::for_problem(&prob);
        cfg.dx = 0.1;
        cfg.horizon = 0.0;
        for m in Method::ALL {
            let traj = solve(&prob, &cfg.clone().with_method(m)).unwrap();
            assert_eq!(traj.steps.len(), 1, "{m}");
        }
    }

    #[test]
    fn zero_hamiltonian_is_a_fixed_point() {
        let prob = flat_problem();
        let mut cfg = SolverConfig::for_problem(&prob);
        cfg.dx = 0.1;
        cfg.horizon = 0.5;
        for m in [Method::FemTilde2, Method::Fm, Method::Limit] {
            let traj = solve(&prob, &cfg.clone().with_method(m)).unwrap();
            let first = traj.value_at(0).unwrap();
            for k in 1..traj.steps.len() {
                let d = traj
                    .value_at(k)
                    .unwrap()
                    .sup_distance(&first, None)
                    .unwrap();
                assert!(d < 1e-12, "{m}: drift {d} at step {k}");
            }
            // φ ≡ 0 lies in the span, so λ⁰ reconstructs it up to scallops
            assert!(first.values().iter().all(|v| *v <= MaxPlusScalar::UNIT));
        }
        let traj = solve(&prob, &cfg.clone().with_method(Method::FemTilde2)).unwrap();
        for lam in &traj.steps {
            assert_eq!(lam, &traj.steps[0]);
        }
        // grid sups sit slightly below the exact products, so the dual
        // variant can only drift downwards, and only by the grid error
        let traj = solve(&prob, &cfg.with_method(Method::FemDual)).unwrap();
        let first = traj.value_at(0).unwrap();
        let last = traj.final_value().unwrap();
        assert!(last.le(&first));
        assert!(last.sup_distance(&first, None).unwrap() < 1e-4);
    }

    #[test]
    fn assemble_rejects_trial_only_methods() {
        let prob = falcone2();
        let cfg = SolverConfig::for_problem(&prob).with_method(Method::Fm);
        assert!(assemble(&prob, &cfg).is_err());
    }
}
