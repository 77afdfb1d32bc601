//! Fixtures shared by the criterion benchmarks.

use maxplus_fem::problems::falcone2;
use maxplus_fem::solver::{self, AssembledOperators};
use maxplus_fem::{ControlProblem, Method, SolverConfig};

/// The `falcone2` problem with its default configuration at element spacing `dx`.
pub fn falcone2_setup(dx: f64, method: Method) -> (ControlProblem, SolverConfig) {
    let problem = falcone2();
    let mut cfg = SolverConfig::for_problem(&problem).with_method(method);
    cfg.dx = dx;
    (problem, cfg)
}

pub fn assembled(dx: f64) -> (ControlProblem, SolverConfig, AssembledOperators) {
    let (problem, cfg) = falcone2_setup(dx, Method::FemTilde2);
    let ops = solver::assemble(&problem, &cfg).expect("valid configuration");
    (problem, cfg, ops)
}
