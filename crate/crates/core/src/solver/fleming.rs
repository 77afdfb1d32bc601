//! Baselines that use only the trial basis: the Fleming–McEneaney recursion
//! and the limit case of the finite element method where the test space is
//! every function. Both share the `[S^Δt w]~` approximation.

use crate::elements::{sample_basis, ElementBasis};
use crate::error::Result;
use crate::maxplus::{MaxPlusMatrix, MaxPlusScalar, MaxPlusVector};
use crate::problems::ControlProblem;
use crate::semimodule::GridSpec;

use super::assembly::semigroup_tilde;

/// `n × p` samples of `[S^Δt w_k]~` on `grid`.
pub fn stepped_samples(
    basis: &ElementBasis,
    problem: &ControlProblem,
    dt: f64,
    grid: &GridSpec,
) -> Result<MaxPlusMatrix> {
    let nodes = grid.nodes();
    let mut data = Vec::with_capacity(grid.n * basis.len());
    for &x in &nodes {
        for w in basis.elements() {
            data.push(MaxPlusScalar::new(
                semigroup_tilde(*w, problem, dt).eval(x)?,
            ));
        }
    }
    MaxPlusMatrix::from_vec(grid.n, basis.len(), data)
}

/// `W_h \ [S^Δt W_h]~`: entry `(i, k) = inf_x ([S^Δt w_k]~(x) - w_i(x))`.
pub fn fm_matrix(
    basis: &ElementBasis,
    problem: &ControlProblem,
    dt: f64,
    grid: &GridSpec,
) -> Result<MaxPlusMatrix> {
    let stepped = stepped_samples(basis, problem, dt, grid)?.transpose();
    let w = sample_basis(basis, grid).transpose();
    let p = basis.len();
    Ok(MaxPlusMatrix::from_fn(p, p, |i, k| {
        w.row(i)
            .iter()
            .zip(stepped.row(k))
            .fold(MaxPlusScalar::POS_INF, |acc, (wi, sk)| {
                acc.meet(wi.residual(*sk))
            })
    }))
}

/// `μ^{t+Δt} = (W_h \ [S^Δt W_h]~) μ^t`.
pub fn fm_steps(
    transition: &MaxPlusMatrix,
    mu0: MaxPlusVector,
    steps: usize,
) -> Result<Vec<MaxPlusVector>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(mu0);
    for _ in 0..steps {
        let next = transition.mat_vec(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `λ^{t+Δt} = W_h \ ([S^Δt W_h]~ λ^t)`, both operators sampled on the grid.
pub fn limit_steps(
    basis: &ElementBasis,
    stepped: &MaxPlusMatrix,
    grid: &GridSpec,
    lambda0: MaxPlusVector,
    steps: usize,
) -> Result<Vec<MaxPlusVector>> {
    let w = sample_basis(basis, grid);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(lambda0);
    for _ in 0..steps {
        let propagated = stepped.mat_vec(out.last().unwrap())?;
        out.push(w.residual_solve(&propagated)?);
    }
    Ok(out)
}
