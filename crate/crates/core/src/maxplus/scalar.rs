use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

/// Element of the completed max-plus semiring `R ∪ {-∞, +∞}`.
///
/// Infinities are explicit variants rather than IEEE infinities, so the
/// semiring conventions are applied by construction and no operation can
/// produce a NaN. The derived variant order `NegInf < Finite < PosInf`
/// together with the ordering of finite values gives the extended-real order.
#[derive(Clone, Copy, Debug, Default)]
pub enum MaxPlusScalar {
    #[default]
    NegInf,
    Finite(f64),
    PosInf,
}

use MaxPlusScalar::{Finite, NegInf, PosInf};

impl MaxPlusScalar {
    /// Neutral element of `⊕` (and absorbing for `⊗`).
    pub const NEG_INF: Self = NegInf;
    pub const POS_INF: Self = PosInf;
    /// Neutral element of `⊗`.
    pub const UNIT: Self = Finite(0.0);

    /// Converts an IEEE value, mapping `±inf` to the tagged infinities.
    ///
    /// Panics on NaN: a NaN reaching the algebra is always an upstream bug.
    pub fn new(x: f64) -> Self {
        if x.is_nan() {
            panic!("NaN is not an element of the max-plus semiring");
        } else if x == f64::NEG_INFINITY {
            NegInf
        } else if x == f64::INFINITY {
            PosInf
        } else {
            Finite(x)
        }
    }

    /// Back to an IEEE value (`±inf` for the infinities).
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(x) => x,
            PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, NegInf)
    }

    /// `a ⊕ b = max(a, b)`.
    #[inline]
    pub fn oplus(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `a ⊗ b = a + b`, with `-∞` absorbing (so `(-∞) ⊗ (+∞) = -∞`).
    #[inline]
    pub fn otimes(self, other: Self) -> Self {
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Self::new(a + b),
        }
    }

    /// Residual `self \ other = sup { λ : self ⊗ λ ≤ other }`.
    ///
    /// Equivalently `other - self` with `+∞` absorbing for the addition.
    #[inline]
    pub fn residual(self, other: Self) -> Self {
        match (self, other) {
            (NegInf, _) => PosInf,
            (PosInf, PosInf) => PosInf,
            (PosInf, _) => NegInf,
            (Finite(_), NegInf) => NegInf,
            (Finite(_), PosInf) => PosInf,
            (Finite(a), Finite(b)) => Self::new(b - a),
        }
    }

    /// Min-plus sum, i.e. the infimum of the two values.
    #[inline]
    pub fn meet(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl From<f64> for MaxPlusScalar {
    fn from(x: f64) -> Self {
        Self::new(x)
    }
}

impl Neg for MaxPlusScalar {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            NegInf => PosInf,
            Finite(x) => Finite(-x),
            PosInf => NegInf,
        }
    }
}

impl PartialEq for MaxPlusScalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MaxPlusScalar {}

impl PartialOrd for MaxPlusScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxPlusScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("finite values are never NaN"),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl fmt::Display for MaxPlusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            Finite(x) => write!(f, "{x}"),
            PosInf => f.write_str("inf"),
        }
    }
}
