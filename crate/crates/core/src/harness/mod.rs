//! Check registry, evaluation of single inputs, and seeded population runs.

mod audit;
mod eval;
mod registry;
mod runner;

pub use audit::{run_audit, AuditConfig, AuditEntry, AuditReport, Witness};
pub use eval::{evaluate, evaluate_matrix, evaluate_scalar, literal_to_matrix, matrix_to_literal, Inputs, MatrixLiteral, MatrixSample};
pub use registry::{lookup, registry, CheckKind, CheckSpec, ParamKind, Params, SCALAR_TOL};
pub use runner::{
    params_label, parse_nu_grid, run_matrix_suite, run_scalar_suite, run_suite, run_sweep, Population, Report, ReportEntry,
    Selection, SweepReport, SweepRow,
};
