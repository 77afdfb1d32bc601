//! Quadratic and Lipschitz finite elements on an interval.
//!
//! A quadratic element centered at `x̂` with parameter `c` is
//! `w(x) = -(x - x̂)² / (2c)`, and `w + x²/(2c)` is affine. A Lipschitz
//! element with slope `A` is `w(x) = -A |x - x̂|`. Both are concave, so the
//! sum of any two of them is concave and piecewise smooth; that is what
//! makes exact max-plus scalar products cheap.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::maxplus::{MaxPlusMatrix, MaxPlusScalar, MaxPlusVector};
use crate::semimodule::{GridFunction, GridSpec, Interval};

/// Default value tolerance used to decide which candidates are maximizers.
pub const ARGMAX_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Quadratic,
    Lipschitz,
}

impl ElementKind {
    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Quadratic => "quadratic",
            ElementKind::Lipschitz => "lipschitz",
        }
    }
}

impl std::str::FromStr for ElementKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic" => Ok(ElementKind::Quadratic),
            "lipschitz" => Ok(ElementKind::Lipschitz),
            _ => Err(Error::UnknownName {
                kind: "element kind",
                name: s.to_owned(),
                valid: "quadratic, lipschitz".into(),
            }),
        }
    }
}

/// A single finite element. `shape` is `c` for quadratic elements and the
/// slope `A` for Lipschitz ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteElement {
    kind: ElementKind,
    center: f64,
    shape: f64,
}

impl FiniteElement {
    pub fn try_new(kind: ElementKind, center: f64, shape: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(invalid("center", format!("must be finite, got {center}")));
        }
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(invalid(
                "shape",
                format!("must be finite and > 0, got {shape}"),
            ));
        }
        Ok(Self {
            kind,
            center,
            shape,
        })
    }

    /// Panics unless `c > 0`.
    pub fn quadratic(center: f64, c: f64) -> Self {
        Self::try_new(ElementKind::Quadratic, center, c).expect("invalid quadratic element")
    }

    /// Panics unless `slope > 0`.
    pub fn lipschitz(center: f64, slope: f64) -> Self {
        Self::try_new(ElementKind::Lipschitz, center, slope).expect("invalid Lipschitz element")
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let d = x - self.center;
        match self.kind {
            ElementKind::Quadratic => -d * d / (2.0 * self.shape),
            ElementKind::Lipschitz => -self.shape * d.abs(),
        }
    }

    /// Derivative at `x`; Lipschitz elements have no derivative at their center.
    #[inline]
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let d = x - self.center;
        match self.kind {
            ElementKind::Quadratic => Ok(-d / self.shape),
            ElementKind::Lipschitz if d == 0.0 => Err(Error::NonDifferentiable {
                center: self.center,
                x,
            }),
            ElementKind::Lipschitz => Ok(-self.shape * d.signum()),
        }
    }

    /// Left and right derivatives at `x`.
    pub fn one_sided_derivatives(&self, x: f64) -> (f64, f64) {
        match self.kind {
            ElementKind::Quadratic => {
                let d = -(x - self.center) / self.shape;
                (d, d)
            }
            ElementKind::Lipschitz => {
                if x < self.center {
                    (self.shape, self.shape)
                } else if x > self.center {
                    (-self.shape, -self.shape)
                } else {
                    (self.shape, -self.shape)
                }
            }
        }
    }

    pub fn is_differentiable_everywhere(&self) -> bool {
        self.kind == ElementKind::Quadratic
    }

    // Breakpoints of the derivative.
    fn kinks(&self) -> Option<f64> {
        match self.kind {
            ElementKind::Quadratic => None,
            ElementKind::Lipschitz => Some(self.center),
        }
    }
}

/// Points that contain a maximizer of `u + v` on `domain`: the interval
/// ends, kinks, and the stationary point of every smooth piece, all clamped.
fn candidate_points(u: &FiniteElement, v: &FiniteElement, domain: Interval) -> Vec<f64> {
    use ElementKind::*;
    let mut pts = vec![domain.lo, domain.hi];
    pts.extend(u.kinks());
    pts.extend(v.kinks());
    match (u.kind, v.kind) {
        (Quadratic, Quadratic) => {
            let (wu, wv) = (1.0 / u.shape, 1.0 / v.shape);
            pts.push((u.center * wu + v.center * wv) / (wu + wv));
        }
        (Lipschitz, Quadratic) | (Quadratic, Lipschitz) => {
            let (lip, quad) = if u.kind == Lipschitz { (u, v) } else { (v, u) };
            let reach = lip.shape * quad.shape;
            pts.push(quad.center - reach);
            pts.push(quad.center + reach);
        }
        (Lipschitz, Lipschitz) => {}
    }
    for p in &mut pts {
        *p = domain.clamp(*p);
    }
    pts
}

/// Max-plus scalar product `⟨u, v⟩ = sup_{x ∈ X} u(x) + v(x)`, computed
/// exactly.
///
/// On the whole line the closed forms are `-d²/(4c)` for two quadratics of
/// parameter `c` with centers `d` apart, `-d²/(2c)` (if `|d| ≤ Ac`) or
/// `-A|d| + A²c/2` for a Lipschitz/quadratic pair, and `-min(A, A')|d|` for
/// two Lipschitz elements. On a bounded `X` the same candidates are clamped,
/// which is exact because the sum is concave.
pub fn scalar_product(u: &FiniteElement, v: &FiniteElement, domain: Interval) -> MaxPlusScalar {
    let best = candidate_points(u, v, domain)
        .into_iter()
        .map(|x| u.eval(x) + v.eval(x))
        .fold(f64::NEG_INFINITY, f64::max);
    MaxPlusScalar::new(best)
}

/// Maximizers of `z + w` on `domain`, up to `tol` in value.
///
/// The argmax of a concave function is a point or a segment; a segment is
/// reported as its two ends plus its midpoint.
pub fn argmax_points(z: &FiniteElement, w: &FiniteElement, domain: Interval, tol: f64) -> Vec<f64> {
    let cands = candidate_points(z, w, domain);
    let vals: Vec<f64> = cands.iter().map(|&x| z.eval(x) + w.eval(x)).collect();
    let sup = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut pts: Vec<f64> = cands
        .into_iter()
        .zip(vals)
        .filter(|&(_, v)| v >= sup - tol)
        .map(|(x, _)| x)
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    if pts.len() > 1 {
        let (first, last) = (pts[0], pts[pts.len() - 1]);
        pts = vec![first, 0.5 * (first + last), last];
    }
    pts
}

/// Ordered family of elements of one kind and shape on a domain `[-b, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementBasis {
    elements: Vec<FiniteElement>,
    domain: Interval,
}

impl ElementBasis {
    pub fn new(elements: Vec<FiniteElement>, domain: Interval) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidBasis("basis has no elements".into()))?;
        if elements
            .iter()
            .any(|e| e.kind != first.kind || e.shape != first.shape)
        {
            return Err(Error::InvalidBasis("mixed element kinds or shapes".into()));
        }
        if elements.windows(2).any(|w| w[0].center >= w[1].center) {
            return Err(Error::InvalidBasis(
                "centers must be strictly increasing".into(),
            ));
        }
        Ok(Self { elements, domain })
    }

    /// Elements of one kind centered on `(Z Δx) ∩ [-reach, reach]`.
    pub fn on_lattice(
        kind: ElementKind,
        shape: f64,
        dx: f64,
        reach: f64,
        domain: Interval,
    ) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(invalid("dx", format!("must be positive, got {dx}")));
        }
        if !(reach >= 0.0 && reach.is_finite()) {
            return Err(Error::DegenerateGrid(format!(
                "center range [-{reach}, {reach}]"
            )));
        }
        let kmax = (reach / dx + 1e-9).floor() as i64;
        let elements = (-kmax..=kmax)
            .map(|k| FiniteElement::try_new(kind, k as f64 * dx, shape))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements, domain)
    }

    pub fn elements(&self) -> &[FiniteElement] {
        &self.elements
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn kind(&self) -> ElementKind {
        self.elements[0].kind
    }

    /// Common `c` (quadratic) or `A` (Lipschitz).
    pub fn shape(&self) -> f64 {
        self.elements[0].shape
    }

    pub fn centers(&self) -> Vec<f64> {
        self.elements.iter().map(|e| e.center).collect()
    }
}

/// Quadratic trial elements of parameter `c` centered on
/// `(Z Δx) ∩ [-(b + cL), b + cL]`, with domain `[-b, b]`.
///
/// The extension by `cL` lets the span reach slopes up to `L` at `±b`.
/// `lipschitz = 0` keeps the centers inside the domain.
pub fn build_primal_basis(c: f64, dx: f64, b: f64, lipschitz: f64) -> Result<ElementBasis> {
    if c.is_nan() || c <= 0.0 {
        return Err(invalid("c", format!("must be > 0, got {c}")));
    }
    if lipschitz.is_nan() || lipschitz < 0.0 {
        return Err(invalid("L", format!("must be >= 0, got {lipschitz}")));
    }
    let domain = Interval::symmetric(b)?;
    ElementBasis::on_lattice(ElementKind::Quadratic, c, dx, b + c * lipschitz, domain)
}

/// Test elements centered on `(Z Δx) ∩ [-b, b]`. For Lipschitz test
/// functions `shape` is the slope `A`, which should dominate the Lipschitz
/// constant of the value function.
pub fn build_test_basis(kind: ElementKind, shape: f64, dx: f64, b: f64) -> Result<ElementBasis> {
    let domain = Interval::symmetric(b)?;
    ElementBasis::on_lattice(kind, shape, dx, b, domain)
}

/// `n × p` matrix whose column `i` samples `w_i` on `grid`.
pub fn sample_basis(basis: &ElementBasis, grid: &GridSpec) -> MaxPlusMatrix {
    let nodes = grid.nodes();
    MaxPlusMatrix::from_fn(grid.n, basis.len(), |k, i| {
        MaxPlusScalar::new(basis.elements[i].eval(nodes[k]))
    })
}

/// `v_h(x_k) = max_i (w_i(x_k) + λ_i)`.
pub fn reconstruct(
    basis: &ElementBasis,
    coeffs: &MaxPlusVector,
    grid: &GridSpec,
) -> Result<GridFunction> {
    crate::error::check_dim("reconstruct", basis.len(), coeffs.len())?;
    let live: Vec<(FiniteElement, MaxPlusScalar)> = basis
        .elements
        .iter()
        .zip(coeffs.iter())
        .filter(|(_, l)| !l.is_neg_inf())
        .map(|(e, l)| (*e, *l))
        .collect();
    let values: Vec<MaxPlusScalar> = (0..grid.n)
        .into_par_iter()
        .with_min_len(64)
        .map(|k| {
            let x = grid.node(k);
            live.iter().fold(MaxPlusScalar::NEG_INF, |acc, (e, l)| {
                acc.oplus(MaxPlusScalar::new(e.eval(x)).otimes(*l))
            })
        })
        .collect();
    GridFunction::new(*grid, MaxPlusVector::new(values))
}
