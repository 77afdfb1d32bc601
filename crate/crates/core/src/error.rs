use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, got {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("element centered at {center} is not differentiable at x = {x}")]
    NonDifferentiable { center: f64, x: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("problem `{0}` has no analytic value function")]
    NoAnalyticSolution(String),

    #[error("unknown {kind} `{name}` (expected one of: {valid})")]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: String,
    },

    #[error("missing required setting `{0}`")]
    MissingSetting(&'static str),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(op: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            expected,
            found,
        })
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
