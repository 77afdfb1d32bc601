use std::fmt;
use std::str::FromStr;

use crate::elements::{ElementKind, ARGMAX_TOL};
use crate::error::{invalid, Error, Result};
use crate::problems::ControlProblem;
use crate::semimodule::{GridSpec, Interval};

/// How the propagated matrix is obtained, or which baseline recursion to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `sup_x z_j + w_i + Δt H(x, w_i')` on the fine grid.
    FemTilde,
    /// `⟨z_j, w_i⟩ + Δt sup_{argmax(z_j + w_i)} H(x, w_i')`.
    FemTilde2,
    /// `sup_x z_j + Δt H(x, -z_j') + w_i` on the fine grid.
    FemDual,
    /// Fleming–McEneaney recursion `μ ← (W \ S̃W) μ`.
    Fm,
    /// Test space = all functions: `λ ← W \ (S̃W λ)`.
    Limit,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::FemTilde,
        Method::FemTilde2,
        Method::FemDual,
        Method::Fm,
        Method::Limit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::FemTilde => "fem-tilde",
            Method::FemTilde2 => "fem-tilde2",
            Method::FemDual => "fem-dual",
            Method::Fm => "fm",
            Method::Limit => "limit",
        }
    }

    /// Whether the method uses test functions at all.
    pub fn uses_test_basis(self) -> bool {
        matches!(self, Method::FemTilde | Method::FemTilde2 | Method::FemDual)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "method",
                name: s.to_owned(),
                valid: Method::ALL.map(Method::name).join(", "),
            })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub horizon: f64,
    /// Element center spacing.
    pub dx: f64,
    /// Trial element parameter (value functions are `1/c`-semiconvex).
    pub c: f64,
    pub test_kind: ElementKind,
    /// Test element slope `A` (Lipschitz) or parameter `c` (quadratic).
    pub test_shape: f64,
    /// Lipschitz bound `L`; trial centers extend to `±(b + cL)`.
    pub lipschitz: f64,
    /// The fine grid used for sups and infs has spacing `dx / fine_factor`.
    pub fine_factor: usize,
    pub method: Method,
    pub argmax_tol: f64,
}

impl SolverConfig {
    pub fn for_problem(problem: &ControlProblem) -> Self {
        let d = problem.defaults();
        Self {
            dt: d.dt,
            horizon: d.horizon,
            dx: d.dx,
            c: d.c,
            test_kind: d.test_kind,
            test_shape: d.test_shape,
            lipschitz: problem.lipschitz_bound(),
            fine_factor: 10,
            method: Method::FemTilde2,
            argmax_tol: ARGMAX_TOL,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    /// Number of time steps `N = T / Δt`; fails unless `T` is a
    /// non-negative integer multiple of `Δt`.
    pub fn steps(&self) -> Result<usize> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(name, format!("must be finite and > 0, got {v}")))
            }
        };
        positive("dt", self.dt)?;
        positive("dx", self.dx)?;
        positive("c", self.c)?;
        positive("A", self.test_shape)?;
        if !(self.horizon >= 0.0 && self.horizon.is_finite()) {
            return Err(invalid(
                "T",
                format!("must be finite and >= 0, got {}", self.horizon),
            ));
        }
        if !(self.lipschitz >= 0.0 && self.lipschitz.is_finite()) {
            return Err(invalid(
                "L",
                format!("must be finite and >= 0, got {}", self.lipschitz),
            ));
        }
        if self.fine_factor == 0 {
            return Err(invalid("fine_factor", "must be >= 1"));
        }
        if self.argmax_tol.is_nan() || self.argmax_tol <= 0.0 {
            return Err(invalid("argmax_tol", "must be > 0"));
        }
        let ratio = self.horizon / self.dt;
        let n = ratio.round();
        if (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
            return Err(invalid(
                "T",
                format!("T = {} is not a multiple of dt = {}", self.horizon, self.dt),
            ));
        }
        Ok(n as usize)
    }

    /// Grid with spacing at most `dx / fine_factor` on `domain`; the domain
    /// ends are always nodes.
    pub fn fine_grid(&self, domain: Interval) -> Result<GridSpec> {
        GridSpec::with_max_spacing(domain, self.dx / self.fine_factor as f64)
    }
}

impl fmt::Display for SolverConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "method={} dt={} T={} dx={} c={} test={} A={} L={} fine_factor={}",
            self.method,
            self.dt,
            self.horizon,
            self.dx,
            self.c,
            self.test_kind.name(),
            self.test_shape,
            self.lipschitz,
            self.fine_factor
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::falcone2;

    #[test]
    fn steps_require_integer_ratio() {
        let mut cfg = SolverConfig::for_problem(&falcone2());
        assert_eq!(cfg.steps().unwrap(), 20);
        cfg.horizon = 0.0;
        assert_eq!(cfg.steps().unwrap(), 0);
        cfg.horizon = 1.01;
        assert!(cfg.steps().is_err());
        cfg.horizon = 1.0;
        cfg.dt = -0.1;
        assert!(cfg.steps().is_err());
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("fem".parse::<Method>().is_err());
    }
}
