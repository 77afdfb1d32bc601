//! Strategies and property checks shared by the property suite and the
//! acceptance runner. Entries are small integers (plus infinities) so that
//! every max-plus operation is exact in floating point.

#![allow(dead_code)]

use maxplus_fem::elements::{build_primal_basis, scalar_product};
use maxplus_fem::semimodule::{project_dual, project_image, project_parallel};
use maxplus_fem::solver::{step, step_game, AssembledOperators};
use maxplus_fem::{
    ElementKind, FiniteElement, GridFunction, GridSpec, Interval, MaxPlusMatrix, MaxPlusScalar,
    MaxPlusVector,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn finite() -> impl Strategy<Value = MaxPlusScalar> {
    (-20i32..=20).prop_map(|k| MaxPlusScalar::new(k as f64))
}

/// Finite or `-∞`, as found in assembled matrices.
pub fn entry() -> impl Strategy<Value = MaxPlusScalar> {
    prop_oneof![8 => finite(), 1 => Just(MaxPlusScalar::NEG_INF)]
}

pub fn any_scalar() -> impl Strategy<Value = MaxPlusScalar> {
    prop_oneof![
        8 => finite(),
        1 => Just(MaxPlusScalar::NEG_INF),
        1 => Just(MaxPlusScalar::POS_INF),
    ]
}

pub fn vector(
    n: usize,
    s: impl Strategy<Value = MaxPlusScalar>,
) -> impl Strategy<Value = MaxPlusVector> {
    prop::collection::vec(s, n).prop_map(MaxPlusVector::new)
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = MaxPlusMatrix> {
    prop::collection::vec(entry(), rows * cols)
        .prop_map(move |d| MaxPlusMatrix::from_vec(rows, cols, d).unwrap())
}

/// `(A, λ, v)` with `A` of size `q × p`, `λ` of length `p`, `v` of length `q`.
pub fn residuation_case() -> impl Strategy<Value = (MaxPlusMatrix, MaxPlusVector, MaxPlusVector)> {
    (1usize..6, 1usize..6).prop_flat_map(|(q, p)| {
        (
            matrix(q, p),
            vector(p, any_scalar()),
            vector(q, any_scalar()),
        )
    })
}

pub struct StepCase {
    pub ops: AssembledOperators,
    pub lambda: MaxPlusVector,
    pub upper: MaxPlusVector,
    pub shift: f64,
}

impl std::fmt::Debug for StepCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "A={:?} B={:?} λ={:?}",
            self.ops.a, self.ops.b, self.lambda
        )
    }
}

pub fn ops(a: MaxPlusMatrix, b: MaxPlusMatrix) -> AssembledOperators {
    // the step only reads the matrices
    let basis = build_primal_basis(1.0, 1.0, 1.0, 0.0).unwrap();
    AssembledOperators {
        a,
        b,
        primal: basis.clone(),
        test: basis,
    }
}

/// Operators `A`, `B` (`q × p`), `λ ≤ upper` and a finite shift.
pub fn step_case() -> impl Strategy<Value = StepCase> {
    (1usize..6, 1usize..6).prop_flat_map(|(q, p)| {
        (
            matrix(q, p),
            matrix(q, p),
            vector(p, any_scalar()),
            vector(p, any_scalar()),
            -20i32..=20,
        )
            .prop_map(|(a, b, l1, l2, s)| StepCase {
                ops: ops(a, b),
                lambda: l1.iter().zip(&l2).map(|(x, y)| x.meet(*y)).collect(),
                upper: l1,
                shift: s as f64,
            })
    })
}

pub struct ProjectionCase {
    pub b: MaxPlusMatrix,
    pub c: MaxPlusMatrix,
    pub u: GridFunction,
    pub u2: GridFunction,
}

impl std::fmt::Debug for ProjectionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "B={:?} C={:?} u={:?} u2={:?}",
            self.b, self.c, self.u, self.u2
        )
    }
}

/// `B` is `n × p`, `C` is `q × n`; `u` and `u2` are finite grid functions.
pub fn projection_case() -> impl Strategy<Value = ProjectionCase> {
    (2usize..7, 1usize..5, 1usize..5).prop_flat_map(|(n, p, q)| {
        let grid = GridSpec::new(Interval::symmetric(1.0).unwrap(), n).unwrap();
        (
            matrix(n, p),
            matrix(q, n),
            vector(n, finite()),
            vector(n, finite()),
        )
            .prop_map(move |(b, c, u, u2)| ProjectionCase {
                b,
                c,
                u: GridFunction::new(grid, u).unwrap(),
                u2: GridFunction::new(grid, u2).unwrap(),
            })
    })
}

pub fn check_galois(
    a: &MaxPlusMatrix,
    lambda: &MaxPlusVector,
    v: &MaxPlusVector,
) -> Result<(), TestCaseError> {
    let lhs = a.mat_vec(lambda).unwrap().le(v);
    let rhs = lambda.le(&a.residual_solve(v).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn check_residuation(
    a: &MaxPlusMatrix,
    lambda: &MaxPlusVector,
    v: &MaxPlusVector,
) -> Result<(), TestCaseError> {
    let sol = a.residual_solve(v).unwrap();
    let reach = a.mat_vec(&sol).unwrap();
    prop_assert!(reach.le(v));
    prop_assert_eq!(a.residual_solve(&reach).unwrap(), sol);
    let image = a.mat_vec(lambda).unwrap();
    prop_assert_eq!(
        a.mat_vec(&a.residual_solve(&image).unwrap()).unwrap(),
        image
    );
    Ok(())
}

pub fn check_step(case: &StepCase) -> Result<(), TestCaseError> {
    let next = step(&case.ops, &case.lambda).unwrap();
    prop_assert_eq!(&next, &step_game(&case.ops, &case.lambda).unwrap());
    prop_assert!(next.le(&step(&case.ops, &case.upper).unwrap()));
    let shifted = step(
        &case.ops,
        &case.lambda.shift(MaxPlusScalar::new(case.shift)),
    )
    .unwrap();
    prop_assert_eq!(shifted, next.shift(MaxPlusScalar::new(case.shift)));
    Ok(())
}

pub fn check_projectors(case: &ProjectionCase) -> Result<(), TestCaseError> {
    let (b, c, u) = (&case.b, &case.c, &case.u);
    let pi = project_image(b, u).unwrap();
    let pd = project_dual(c, u).unwrap();
    let pp = project_parallel(b, c, u).unwrap();
    prop_assert_eq!(&project_image(b, &pi).unwrap(), &pi);
    prop_assert_eq!(&project_dual(c, &pd).unwrap(), &pd);
    prop_assert_eq!(&project_parallel(b, c, &pp).unwrap(), &pp);
    prop_assert!(pi.le(u) && u.le(&pd));
    prop_assert_eq!(&project_image(b, &pd).unwrap(), &pp);

    let u2 = &case.u2;
    let d = u.sup_distance(u2, None).unwrap();
    let pairs = [
        (pi.clone(), project_image(b, u2).unwrap()),
        (pd.clone(), project_dual(c, u2).unwrap()),
        (pp.clone(), project_parallel(b, c, u2).unwrap()),
    ];
    for (x, y) in &pairs {
        prop_assert!(x.sup_distance(y, None).unwrap() <= d);
    }
    let lo: MaxPlusVector = u
        .values()
        .iter()
        .zip(u2.values())
        .map(|(x, y)| x.meet(*y))
        .collect();
    let lo = GridFunction::new(*u.grid(), lo).unwrap();
    prop_assert!(project_image(b, &lo).unwrap().le(&pi));
    prop_assert!(project_dual(c, &lo).unwrap().le(&pd));
    prop_assert!(project_parallel(b, c, &lo).unwrap().le(&pp));
    Ok(())
}

/// Random elements of either kind on `[-1, 1]`, centers possibly outside.
pub fn element() -> impl Strategy<Value = FiniteElement> {
    (any::<bool>(), -1.5f64..1.5, 0.2f64..3.0).prop_map(|(quad, center, shape)| {
        let kind = if quad {
            ElementKind::Quadratic
        } else {
            ElementKind::Lipschitz
        };
        FiniteElement::try_new(kind, center, shape).unwrap()
    })
}

pub const ORACLE_STEP: f64 = 1e-4;

fn max_slope(e: &FiniteElement, dom: Interval) -> f64 {
    match e.kind() {
        ElementKind::Lipschitz => e.shape(),
        ElementKind::Quadratic => {
            (dom.hi - e.center()).abs().max((dom.lo - e.center()).abs()) / e.shape()
        }
    }
}

/// Closed-form scalar product against a brute-force sup on a grid of step
/// [`ORACLE_STEP`].
pub fn check_scalar_product(u: &FiniteElement, v: &FiniteElement) -> Result<(), TestCaseError> {
    let dom = Interval::symmetric(1.0).unwrap();
    let n = (dom.width() / ORACLE_STEP).round() as usize;
    let oracle = (0..=n)
        .map(|k| {
            let x = dom.lo + k as f64 * ORACLE_STEP;
            u.eval(x) + v.eval(x)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let exact = scalar_product(u, v, dom).to_f64();
    prop_assert_eq!(exact, scalar_product(v, u, dom).to_f64());
    let resolution = (max_slope(u, dom) + max_slope(v, dom)) * ORACLE_STEP;
    prop_assert!(
        exact >= oracle - 1e-12,
        "closed form {exact} below oracle {oracle}"
    );
    prop_assert!(
        exact - oracle <= 1e-6 + resolution,
        "closed form {exact} vs oracle {oracle}"
    );
    Ok(())
}
