use crate::elements::{reconstruct, ElementBasis};
use crate::error::{check_dim, Result};
use crate::maxplus::{MaxPlusScalar, MaxPlusVector};
use crate::semimodule::{GridFunction, GridSpec};

use super::AssembledOperators;

/// Coefficients `λ^0, λ^Δt, …, λ^T` of `v_h^t = W_h λ^t`.
#[derive(Clone, Debug)]
pub struct CoefficientTrajectory {
    pub steps: Vec<MaxPlusVector>,
    pub dt: f64,
    pub basis: ElementBasis,
    /// Fine grid on which sups and infs were evaluated.
    pub grid: GridSpec,
}

impl CoefficientTrajectory {
    pub fn final_coefficients(&self) -> &MaxPlusVector {
        self.steps.last().expect("trajectory always holds λ^0")
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    /// `v_h^t` at step `k`, sampled on the solver's fine grid.
    pub fn value_at(&self, k: usize) -> Result<GridFunction> {
        reconstruct(&self.basis, &self.steps[k], &self.grid)
    }

    pub fn final_value(&self) -> Result<GridFunction> {
        self.value_at(self.steps.len() - 1)
    }
}

/// `λ^0 = W_h \ φ`, i.e. `λ^0_i = inf_x (φ(x) - w_i(x))` over the grid.
pub fn initial_coefficients<F>(basis: &ElementBasis, terminal: F, grid: &GridSpec) -> MaxPlusVector
where
    F: Fn(f64) -> MaxPlusScalar,
{
    let phi: Vec<(f64, MaxPlusScalar)> = (0..grid.n)
        .map(|k| {
            let x = grid.node(k);
            (x, terminal(x))
        })
        .collect();
    basis
        .elements()
        .iter()
        .map(|w| {
            phi.iter().fold(MaxPlusScalar::POS_INF, |acc, &(x, p)| {
                acc.meet(MaxPlusScalar::new(w.eval(x)).residual(p))
            })
        })
        .collect()
}

/// One step of the finite element recursion, `λ' = A_h \ (B_h λ)`: the
/// greatest `λ'` with `A_h λ' ≤ B_h λ`.
pub fn step(ops: &AssembledOperators, lambda: &MaxPlusVector) -> Result<MaxPlusVector> {
    ops.a.residual_solve(&ops.b.mat_vec(lambda)?)
}

/// The same step written as the value recursion of a zero-sum game:
/// `λ'_i = min_j ( -(A_h)_ji + max_k ((B_h)_jk + λ_k) )`.
///
/// The minimizer picks a test function `j`, the maximizer a trial element
/// `k`. Kept as an independent code path for cross-checking [`step`].
pub fn step_game(ops: &AssembledOperators, lambda: &MaxPlusVector) -> Result<MaxPlusVector> {
    let (a, b) = (&ops.a, &ops.b);
    check_dim("step_game", b.cols(), lambda.len())?;
    check_dim("step_game", a.rows(), b.rows())?;
    let payoff: Vec<MaxPlusScalar> = (0..b.rows())
        .map(|j| {
            let mut best = MaxPlusScalar::NEG_INF;
            for k in 0..b.cols() {
                best = best.oplus(b.get(j, k).otimes(lambda[k]));
            }
            best
        })
        .collect();
    Ok((0..a.cols())
        .map(|i| {
            let mut worst = MaxPlusScalar::POS_INF;
            for (j, &pj) in payoff.iter().enumerate() {
                worst = worst.meet(a.get(j, i).residual(pj));
            }
            worst
        })
        .collect())
}
