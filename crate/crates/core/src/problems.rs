//! Benchmark finite-horizon control problems in one space dimension.
//!
//! Each problem maximizes `∫ ℓ(x, u) ds + φ(x(T))` subject to `ẋ = f(x, u)`,
//! and carries its closed-form Hamiltonian `H(x, p) = sup_u ℓ + p f`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::elements::ElementKind;
use crate::error::{invalid, Error, Result};
use crate::maxplus::MaxPlusScalar;
use crate::semimodule::Interval;

type StateControlFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type TerminalFn = Arc<dyn Fn(f64) -> MaxPlusScalar + Send + Sync>;

/// Discretization parameters that work well for a given problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemDefaults {
    pub horizon: f64,
    pub dt: f64,
    pub dx: f64,
    /// Trial element parameter `c`.
    pub c: f64,
    pub test_kind: ElementKind,
    /// Slope `A` for Lipschitz test elements, `c` for quadratic ones.
    pub test_shape: f64,
}

#[derive(Clone)]
pub struct ControlProblem {
    name: String,
    domain: Interval,
    control_set: Interval,
    lagrangian: StateControlFn,
    dynamics: StateControlFn,
    terminal: TerminalFn,
    hamiltonian: StateControlFn,
    analytic: Option<StateControlFn>,
    lipschitz_bound: f64,
    error_window: Interval,
    defaults: ProblemDefaults,
}

impl fmt::Debug for ControlProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ControlProblem")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("control_set", &self.control_set)
            .field("lipschitz_bound", &self.lipschitz_bound)
            .field("defaults", &self.defaults)
            .finish_non_exhaustive()
    }
}

impl ControlProblem {
    /// A problem with `ℓ = f = H = 0` and `φ = 0`; use the `with_*`
    /// methods to fill it in.
    pub fn new(name: impl Into<String>, domain: Interval, control_set: Interval) -> Self {
        Self {
            name: name.into(),
            domain,
            control_set,
            lagrangian: Arc::new(|_, _| 0.0),
            dynamics: Arc::new(|_, _| 0.0),
            terminal: Arc::new(|_| MaxPlusScalar::UNIT),
            hamiltonian: Arc::new(|_, _| 0.0),
            analytic: None,
            lipschitz_bound: 0.0,
            error_window: domain,
            defaults: ProblemDefaults {
                horizon: 1.0,
                dt: 0.05,
                dx: 0.02,
                c: 1.0,
                test_kind: ElementKind::Lipschitz,
                test_shape: 1.0,
            },
        }
    }

    pub fn with_lagrangian(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.lagrangian = Arc::new(f);
        self
    }

    pub fn with_dynamics(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.dynamics = Arc::new(f);
        self
    }

    pub fn with_terminal(
        mut self,
        f: impl Fn(f64) -> MaxPlusScalar + Send + Sync + 'static,
    ) -> Self {
        self.terminal = Arc::new(f);
        self
    }

    pub fn with_hamiltonian(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.hamiltonian = Arc::new(f);
        self
    }

    pub fn with_analytic(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.analytic = Some(Arc::new(f));
        self
    }

    pub fn with_lipschitz_bound(mut self, l: f64) -> Self {
        self.lipschitz_bound = l;
        self
    }

    pub fn with_error_window(mut self, window: Interval) -> Self {
        self.error_window = window;
        self
    }

    pub fn with_defaults(mut self, defaults: ProblemDefaults) -> Self {
        self.defaults = defaults;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Half-width `b` of the symmetric domain `[-b, b]`.
    pub fn half_width(&self) -> f64 {
        self.domain.hi
    }

    pub fn control_set(&self) -> Interval {
        self.control_set
    }

    pub fn lagrangian(&self, x: f64, u: f64) -> f64 {
        (self.lagrangian)(x, u)
    }

    pub fn dynamics(&self, x: f64, u: f64) -> f64 {
        (self.dynamics)(x, u)
    }

    pub fn terminal(&self, x: f64) -> MaxPlusScalar {
        (self.terminal)(x)
    }

    #[inline]
    pub fn hamiltonian(&self, x: f64, p: f64) -> f64 {
        (self.hamiltonian)(x, p)
    }

    pub fn analytic(&self, x: f64, t: f64) -> Option<f64> {
        self.analytic.as_ref().map(|v| v(x, t))
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    /// Lipschitz bound `L` of the value function used to extend the trial
    /// grid.
    pub fn lipschitz_bound(&self) -> f64 {
        self.lipschitz_bound
    }

    /// Sub-interval on which errors against the analytic solution are
    /// measured.
    pub fn error_window(&self) -> Interval {
        self.error_window
    }

    pub fn defaults(&self) -> ProblemDefaults {
        self.defaults
    }
}

/// Brute-force `max_u ℓ(x, u) + p f(x, u)` over `n_u` uniform samples of
/// the control set.
pub fn hamiltonian_oracle(problem: &ControlProblem, x: f64, p: f64, n_u: usize) -> f64 {
    assert!(n_u >= 2, "need at least two control samples");
    let u_set = problem.control_set();
    let step = u_set.width() / (n_u - 1) as f64;
    (0..n_u)
        .map(|k| {
            let u = if k + 1 == n_u {
                u_set.hi
            } else {
                u_set.lo + k as f64 * step
            };
            problem.lagrangian(x, u) + p * problem.dynamics(x, u)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Linear-quadratic problem on `X = [-L, L]`: `ℓ = -(a/2)x² - u²/2`, `f = u`,
/// `φ = 0`, hence `H = -(a/2)x² + p²/2`.
///
/// The value function is `v(x, t) = -q(t) x² / 2` with `q' = a - q²`,
/// `q(0) = 0`, i.e. `q(t) = √a tanh(√a t)`. Errors are measured on
/// `[-L/5, L/5]`, away from the truncation boundary.
pub fn lq_problem(a: f64, half_width: f64) -> Result<ControlProblem> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid("a", format!("must be > 0, got {a}")));
    }
    let domain = Interval::symmetric(half_width)?;
    let sa = a.sqrt();
    // U = R in the model; the oracle needs a finite set containing every
    // maximizer u* = p that is probed.
    let controls = Interval::symmetric(20.0)?;
    Ok(ControlProblem::new("lq", domain, controls)
        .with_lagrangian(move |x, u| -(0.5 * a * x * x + 0.5 * u * u))
        .with_dynamics(|_, u| u)
        .with_hamiltonian(move |x, p| -0.5 * a * x * x + 0.5 * p * p)
        .with_analytic(move |x, t| -0.5 * sa * (sa * t).tanh() * x * x)
        .with_lipschitz_bound(0.0)
        .with_error_window(Interval::symmetric(half_width / 5.0)?)
        .with_defaults(ProblemDefaults {
            horizon: 5.0,
            dt: 0.05,
            dx: 0.05,
            c: 1.0,
            test_kind: ElementKind::Quadratic,
            test_shape: 1.0,
        }))
}

fn on_boundary(x: f64) -> bool {
    x.abs() >= 1.0
}

/// Minimum-time-to-exit problem on `[-1, 1]` with an absorbing boundary:
/// `ℓ = -1`, `f = u` inside, `ℓ = f = 0` at `±1`.
pub fn distance_problem() -> ControlProblem {
    let unit = Interval { lo: -1.0, hi: 1.0 };
    ControlProblem::new("distance", unit, unit)
        .with_lagrangian(|x, _| if on_boundary(x) { 0.0 } else { -1.0 })
        .with_dynamics(|x, u| if on_boundary(x) { 0.0 } else { u })
        .with_hamiltonian(|x, p| if on_boundary(x) { 0.0 } else { p.abs() - 1.0 })
        .with_analytic(|x, t| -t.min(1.0 - x.abs()))
        .with_lipschitz_bound(1.0)
        .with_defaults(ProblemDefaults {
            horizon: 1.0,
            dt: 0.05,
            dx: 0.0125,
            c: 1.2,
            test_kind: ElementKind::Lipschitz,
            test_shape: 1.1,
        })
}

/// `ℓ = x`, `f = -xu`, `U = [0, 1]` on `[-1, 1]`.
pub fn falcone1() -> ControlProblem {
    let unit = Interval { lo: -1.0, hi: 1.0 };
    ControlProblem::new("falcone1", unit, Interval { lo: 0.0, hi: 1.0 })
        .with_lagrangian(|x, _| x)
        .with_dynamics(|x, u| -x * u)
        .with_hamiltonian(|x, p| x + (-x * p).max(0.0))
        .with_analytic(|x, t| {
            if x > 0.0 {
                x * t
            } else {
                x * (1.0 - (-t).exp())
            }
        })
        .with_lipschitz_bound(1.0)
        .with_defaults(ProblemDefaults {
            horizon: 1.0,
            dt: 0.05,
            dx: 0.02,
            c: 1.4,
            test_kind: ElementKind::Lipschitz,
            test_shape: 1.3,
        })
}

/// `ℓ = -3(1 - |x|)`, `f = u(1 - |x|)`, `U = [-1, 1]` on `[-1, 1]`.
pub fn falcone2() -> ControlProblem {
    let unit = Interval { lo: -1.0, hi: 1.0 };
    ControlProblem::new("falcone2", unit, unit)
        .with_lagrangian(|x, _| -3.0 * (1.0 - x.abs()))
        .with_dynamics(|x, u| u * (1.0 - x.abs()))
        .with_hamiltonian(|x, p| (1.0 - x.abs()) * (p.abs() - 3.0))
        .with_analytic(|x, t| -3.0 * (1.0 - x.abs()) * (1.0 - (-t).exp()))
        // sup_t |∂v/∂x| = 3(1 - e^{-1}) ≈ 1.896 on [0, 1]
        .with_lipschitz_bound(1.9)
        .with_defaults(ProblemDefaults {
            horizon: 1.0,
            dt: 0.05,
            dx: 0.02,
            c: 1.1,
            test_kind: ElementKind::Lipschitz,
            test_shape: 2.0,
        })
}

/// The named benchmarks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Benchmark {
    Lq,
    Distance,
    Falcone1,
    Falcone2,
}

impl Benchmark {
    pub const ALL: [Benchmark; 4] = [
        Benchmark::Lq,
        Benchmark::Distance,
        Benchmark::Falcone1,
        Benchmark::Falcone2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::Lq => "lq",
            Benchmark::Distance => "distance",
            Benchmark::Falcone1 => "falcone1",
            Benchmark::Falcone2 => "falcone2",
        }
    }

    /// Builds the problem. `lq_a` and `lq_half_width` only affect `lq`
    /// (defaults 0.3 and 10).
    pub fn problem(self, lq_a: Option<f64>, lq_half_width: Option<f64>) -> Result<ControlProblem> {
        match self {
            Benchmark::Lq => lq_problem(lq_a.unwrap_or(0.3), lq_half_width.unwrap_or(10.0)),
            Benchmark::Distance => Ok(distance_problem()),
            Benchmark::Falcone1 => Ok(falcone1()),
            Benchmark::Falcone2 => Ok(falcone2()),
        }
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Benchmark::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "problem",
                name: s.to_owned(),
                valid: Benchmark::ALL.map(Benchmark::name).join(", "),
            })
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
