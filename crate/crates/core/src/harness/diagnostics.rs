use crate::elements::{sample_basis, ElementBasis};
use crate::error::Result;
use crate::semimodule::{project_dual, project_image, GridFunction, Interval};

/// Sup errors of the two projections of a function, typically the exact
/// value function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionErrors {
    /// `‖P_{im W} v - v‖`: how well the trial span represents `v`.
    pub image: f64,
    /// `‖Z \ (Z v) - v‖`: how much the test functions lose of `v`.
    pub dual: f64,
}

/// Both projection errors of `v` on its own grid, measured on `window`.
pub fn projection_diagnostics(
    v: &GridFunction,
    trial: &ElementBasis,
    test: &ElementBasis,
    window: Option<Interval>,
) -> Result<ProjectionErrors> {
    let grid = *v.grid();
    let w = sample_basis(trial, &grid);
    let z = sample_basis(test, &grid).transpose();
    Ok(ProjectionErrors {
        image: project_image(&w, v)?.sup_distance(v, window)?,
        dual: project_dual(&z, v)?.sup_distance(v, window)?,
    })
}
