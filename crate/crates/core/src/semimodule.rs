//! Grid functions and projectors onto max-plus subsemimodules.
//!
//! Functions on `X` are represented by their samples on a uniform grid. A
//! matrix `B` whose column `i` samples a generator `w_i` then acts as the
//! kernel operator `λ ↦ ⋁_i w_i λ_i`, and a matrix `C` whose row `j`
//! samples a test function `z_j` acts as `u ↦ (⟨z_j, u⟩)_j`.

use crate::error::{check_dim, invalid, Error, Result};
use crate::maxplus::{MaxPlusMatrix, MaxPlusScalar, MaxPlusVector};

/// Closed interval `[lo, hi]` of the real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid(
                "interval",
                format!("need finite lo < hi, got [{lo}, {hi}]"),
            ));
        }
        Ok(Self { lo, hi })
    }

    /// `[-b, b]`.
    pub fn symmetric(b: f64) -> Result<Self> {
        Self::new(-b, b)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }
}

/// Uniform grid `x_k = lo + k (hi - lo) / (n - 1)`, `k = 0..n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub domain: Interval,
    pub n: usize,
}

impl GridSpec {
    pub fn new(domain: Interval, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateGrid(format!(
                "need at least 2 nodes, got {n}"
            )));
        }
        Ok(Self { domain, n })
    }

    /// Smallest uniform grid on `domain` whose spacing does not exceed `h`.
    /// Both endpoints are always nodes.
    pub fn with_max_spacing(domain: Interval, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(invalid(
                "grid spacing",
                format!("must be positive, got {h}"),
            ));
        }
        let cells = (domain.width() / h - 1e-9).ceil().max(1.0) as usize;
        Self::new(domain, cells + 1)
    }

    pub fn spacing(&self) -> f64 {
        self.domain.width() / (self.n - 1) as f64
    }

    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        if k + 1 == self.n {
            self.domain.hi
        } else {
            self.domain.lo + k as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.node(k)).collect()
    }
}

/// Samples of a function `X → R̄_max` on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: GridSpec,
    values: MaxPlusVector,
}

impl GridFunction {
    pub fn new(grid: GridSpec, values: MaxPlusVector) -> Result<Self> {
        check_dim("grid function", grid.n, values.len())?;
        Ok(Self { grid, values })
    }

    pub fn sample<F: Fn(f64) -> MaxPlusScalar>(grid: GridSpec, f: F) -> Self {
        let values = (0..grid.n).map(|k| f(grid.node(k))).collect();
        Self { grid, values }
    }

    pub fn sample_f64<F: Fn(f64) -> f64>(grid: GridSpec, f: F) -> Self {
        Self::sample(grid, |x| MaxPlusScalar::new(f(x)))
    }

    pub fn constant(grid: GridSpec, value: MaxPlusScalar) -> Self {
        Self {
            grid,
            values: MaxPlusVector::constant(grid.n, value),
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &MaxPlusVector {
        &self.values
    }

    pub fn into_values(self) -> MaxPlusVector {
        self.values
    }

    pub fn len(&self) -> usize {
        self.grid.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, MaxPlusScalar)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (self.grid.node(k), *v))
    }

    pub fn le(&self, other: &Self) -> bool {
        self.values.le(&other.values)
    }

    /// `sup_k |self_k - other_k|`, restricted to nodes in `window` when given.
    ///
    /// Matching infinities count as zero distance; any other infinite entry
    /// makes the distance infinite.
    pub fn sup_distance(&self, other: &Self, window: Option<Interval>) -> Result<f64> {
        check_dim("sup_distance", self.len(), other.len())?;
        let mut worst = 0.0_f64;
        for (k, (a, b)) in self.values.iter().zip(other.values.iter()).enumerate() {
            if let Some(w) = window {
                if !w.contains(self.grid.node(k)) {
                    continue;
                }
            }
            let d = match (a.finite(), b.finite()) {
                (Some(x), Some(y)) => (x - y).abs(),
                _ if a == b => 0.0,
                _ => f64::INFINITY,
            };
            worst = worst.max(d);
        }
        Ok(worst)
    }
}

/// Canonical projection on `im B`: `B (B \ u)`, the greatest element of
/// `im B` below `u`.
pub fn project_image(b: &MaxPlusMatrix, u: &GridFunction) -> Result<GridFunction> {
    let lambda = b.residual_solve(u.values())?;
    GridFunction::new(u.grid, b.mat_vec(&lambda)?)
}

/// Dual projection `C \ (C u)`: the least element of the min-plus
/// semimodule `-im C*` above `u`.
pub fn project_dual(c: &MaxPlusMatrix, u: &GridFunction) -> Result<GridFunction> {
    let tested = c.mat_vec(u.values())?;
    GridFunction::new(u.grid, c.residual_solve(&tested)?)
}

/// Projection on `im B` parallel to `ker C`: `B ((C B) \ (C u))`, i.e.
/// `max { y ∈ im B : C y ≤ C u }`.
pub fn project_parallel(
    b: &MaxPlusMatrix,
    c: &MaxPlusMatrix,
    u: &GridFunction,
) -> Result<GridFunction> {
    let cb = c.mat_mul(b)?;
    let lambda = cb.residual_solve(&c.mat_vec(u.values())?)?;
    GridFunction::new(u.grid, b.mat_vec(&lambda)?)
}
