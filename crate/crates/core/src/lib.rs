//! Max-plus (tropical) Petrov–Galerkin finite elements for finite-horizon
//! deterministic optimal control in one space dimension.
//!
//! The value function `v(·, t)` of a maximization problem evolves by a
//! max-plus linear semigroup. This crate approximates it in the max-plus
//! span of quadratic trial elements, tested against Lipschitz (or
//! quadratic) test functions, and advances the coefficients by residuation:
//!
//! ```
//! use maxplus_fem::{problems, solver};
//!
//! let problem = problems::falcone2();
//! let mut cfg = solver::SolverConfig::for_problem(&problem);
//! cfg.dx = 0.1;
//! cfg.horizon = 0.2;
//! let traj = solver::solve(&problem, &cfg).unwrap();
//! assert_eq!(traj.steps.len(), 5);
//! ```
//!
//! Modules, bottom up: [`maxplus`] (semiring arithmetic and residuation),
//! [`semimodule`] (grid functions and projectors), [`elements`] (finite
//! elements and bases), [`problems`] (benchmarks with analytic solutions),
//! [`solver`] (assembly and time stepping) and [`harness`] (reports, CSV,
//! diagnostics and convergence studies).

pub mod elements;
pub mod error;
pub mod harness;
pub mod maxplus;
pub mod problems;
pub mod semimodule;
pub mod solver;

pub use elements::{ElementBasis, ElementKind, FiniteElement};
pub use error::{Error, Result};
pub use maxplus::{MaxPlusMatrix, MaxPlusScalar, MaxPlusVector};
pub use problems::{Benchmark, ControlProblem};
pub use semimodule::{GridFunction, GridSpec, Interval};
pub use solver::{CoefficientTrajectory, Method, SolverConfig};
