//! Assembly of `A_h = Z_h* W_h` and approximations of `B_h = Z_h* S^Δt W_h`.

use rayon::prelude::*;

use crate::elements::{argmax_points, scalar_product, ElementBasis, ElementKind, FiniteElement};
use crate::error::{Error, Result};
use crate::maxplus::{MaxPlusMatrix, MaxPlusScalar};
use crate::problems::ControlProblem;
use crate::semimodule::GridSpec;

// Extra integrand evaluations spent refining the best grid cell.
const REFINE_EVALS: usize = 10;

/// `[S^Δt w]~(x) = w(x) + Δt H(x, w'(x))`, evaluated lazily.
#[derive(Clone, Copy)]
pub struct SteppedElement<'a> {
    element: FiniteElement,
    problem: &'a ControlProblem,
    dt: f64,
}

impl<'a> SteppedElement<'a> {
    pub fn eval(&self, x: f64) -> Result<f64> {
        let w = self.element.eval(x);
        if self.dt == 0.0 {
            return Ok(w);
        }
        let p = self.element.derivative(x)?;
        Ok(w + self.dt * self.problem.hamiltonian(x, p))
    }
}

pub fn semigroup_tilde(w: FiniteElement, problem: &ControlProblem, dt: f64) -> SteppedElement<'_> {
    SteppedElement {
        element: w,
        problem,
        dt,
    }
}

/// Max-plus linear operators of one time step together with their bases.
#[derive(Clone, Debug)]
pub struct AssembledOperators {
    /// `q × p`, entries `⟨z_j, w_i⟩`.
    pub a: MaxPlusMatrix,
    /// `q × p`, entries `≈ ⟨z_j, S^Δt w_i⟩`.
    pub b: MaxPlusMatrix,
    pub primal: ElementBasis,
    pub test: ElementBasis,
}

/// `(A_h)_ji = ⟨z_j, w_i⟩`, exact.
pub fn assemble_a(test: &ElementBasis, primal: &ElementBasis) -> MaxPlusMatrix {
    let domain = primal.domain();
    let (z, w) = (test.elements(), primal.elements());
    MaxPlusMatrix::from_fn(z.len(), w.len(), |j, i| {
        scalar_product(&z[j], &w[i], domain)
    })
}

fn require_differentiable(basis: &ElementBasis, what: &str) -> Result<()> {
    if basis.kind() == ElementKind::Quadratic {
        Ok(())
    } else {
        Err(Error::InvalidBasis(format!(
            "{what} needs differentiable (quadratic) trial elements; use fem-dual"
        )))
    }
}

/// Rows of `table` hold `f_r(x_k)` for every fine-grid node.
fn tabulate<F>(rows: usize, grid: &GridSpec, f: F) -> Vec<f64>
where
    F: Fn(usize, f64) -> f64 + Sync,
{
    let n = grid.n;
    let mut table = vec![0.0; rows * n];
    table.par_chunks_mut(n).enumerate().for_each(|(r, row)| {
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = f(r, grid.node(k));
        }
    });
    table
}

/// Golden-section refinement of `sup f` on the bracket `[lo, hi]`; returns
/// the best of `REFINE_EVALS` samples.
fn refine_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f1.max(f2);
    for _ in 2..REFINE_EVALS {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            best = best.max(f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            best = best.max(f2);
        }
    }
    best
}

/// Sup of `row_a[k] + row_b[k]` over the grid, then refined around the best
/// node with the exact integrand.
fn grid_sup<F: Fn(f64) -> f64>(row_a: &[f64], row_b: &[f64], grid: &GridSpec, exact: F) -> f64 {
    let (k_best, v_best) = row_a
        .iter()
        .zip(row_b)
        .map(|(a, b)| a + b)
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
        );
    let lo = grid.node(k_best.saturating_sub(1));
    let hi = grid.node((k_best + 1).min(grid.n - 1));
    v_best.max(refine_max(exact, lo, hi))
}

/// `(B~)_ji = sup_x z_j(x) + w_i(x) + Δt H(x, w_i'(x))` over the fine grid.
pub fn assemble_b_tilde(
    test: &ElementBasis,
    primal: &ElementBasis,
    problem: &ControlProblem,
    dt: f64,
    grid: &GridSpec,
) -> Result<MaxPlusMatrix> {
    require_differentiable(primal, "fem-tilde")?;
    let (z, w) = (test.elements(), primal.elements());
    let n = grid.n;
    let ztab = tabulate(z.len(), grid, |j, x| z[j].eval(x));
    let stepped = |i: usize, x: f64| {
        let e = &w[i];
        e.eval(x) + dt * problem.hamiltonian(x, -(x - e.center()) / e.shape())
    };
    let stab = tabulate(w.len(), grid, stepped);
    Ok(MaxPlusMatrix::from_fn(z.len(), w.len(), |j, i| {
        let exact = |x: f64| z[j].eval(x) + stepped(i, x);
        let sup = grid_sup(
            &ztab[j * n..(j + 1) * n],
            &stab[i * n..(i + 1) * n],
            grid,
            exact,
        );
        MaxPlusScalar::new(sup)
    }))
}

/// `(B~~)_ji = ⟨z_j, w_i⟩ + Δt sup_{x ∈ argmax(z_j + w_i)} H(x, w_i'(x))`.
///
/// When the argmax is a segment the sup is taken over its ends and midpoint.
pub fn assemble_b_tilde2(
    test: &ElementBasis,
    primal: &ElementBasis,
    problem: &ControlProblem,
    dt: f64,
    tol: f64,
) -> Result<MaxPlusMatrix> {
    require_differentiable(primal, "fem-tilde2")?;
    let domain = primal.domain();
    let (z, w) = (test.elements(), primal.elements());
    Ok(MaxPlusMatrix::from_fn(z.len(), w.len(), |j, i| {
        let product = scalar_product(&z[j], &w[i], domain);
        if dt == 0.0 {
            return product;
        }
        let h = argmax_points(&z[j], &w[i], domain, tol)
            .into_iter()
            .map(|x| problem.hamiltonian(x, -(x - w[i].center()) / w[i].shape()))
            .fold(f64::NEG_INFINITY, f64::max);
        product.otimes(MaxPlusScalar::new(dt * h))
    }))
}

/// `Δt H(x, -z'(x))`; at a kink of `z` the larger one-sided value is used.
fn dual_increment(z: &FiniteElement, problem: &ControlProblem, dt: f64, x: f64) -> f64 {
    if dt == 0.0 {
        return 0.0;
    }
    let (left, right) = z.one_sided_derivatives(x);
    let h = if left == right {
        problem.hamiltonian(x, -left)
    } else {
        problem
            .hamiltonian(x, -left)
            .max(problem.hamiltonian(x, -right))
    };
    dt * h
}

/// Dual formula `(B)_ji ≈ sup_x z_j(x) + Δt H(x, -z_j'(x)) + w_i(x)`, for
/// trial elements that need not be differentiable.
///
/// Kinks of `z_j` are evaluated with the one-sided limits of the
/// Hamiltonian term and are always included as candidates.
pub fn assemble_b_dual(
    test: &ElementBasis,
    primal: &ElementBasis,
    problem: &ControlProblem,
    dt: f64,
    grid: &GridSpec,
) -> Result<MaxPlusMatrix> {
    let domain = primal.domain();
    let (z, w) = (test.elements(), primal.elements());
    let n = grid.n;
    let integrand = |j: usize, x: f64| z[j].eval(x) + dual_increment(&z[j], problem, dt, x);
    let ztab = tabulate(z.len(), grid, integrand);
    let wtab = tabulate(w.len(), grid, |i, x| w[i].eval(x));
    Ok(MaxPlusMatrix::from_fn(z.len(), w.len(), |j, i| {
        let exact = |x: f64| integrand(j, x) + w[i].eval(x);
        let mut sup = grid_sup(
            &ztab[j * n..(j + 1) * n],
            &wtab[i * n..(i + 1) * n],
            grid,
            exact,
        );
        if z[j].kind() == ElementKind::Lipschitz && domain.contains(z[j].center()) {
            sup = sup.max(exact(z[j].center()));
        }
        MaxPlusScalar::new(sup)
    }))
}
