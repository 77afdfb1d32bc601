//! Running the solver end to end: reports with error tables, CSV export,
//! projection diagnostics, convergence studies and `key=value` settings.

mod convergence;
mod csv;
mod diagnostics;
mod report;
mod settings;

pub use convergence::{convergence_study, ConvergenceRow};
pub use csv::{export_csv, read_csv, write_csv, CsvTable, DEFAULT_INF_CAP};
pub use diagnostics::{projection_diagnostics, ProjectionErrors};
pub use report::{exact_solution, run_solve, RunOutcome, RunReport, StepError};
pub use settings::RunSettings;
