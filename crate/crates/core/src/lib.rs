//! Numerical verification of refined Young and Heinz inequalities.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`]: the ν-constants, the refinement term `S₁`, and every scalar
//!   Young/Heinz bound together with its convex-function sandwich forms.
//! - [`matrix`]: dense complex matrices, a cyclic Jacobi Hermitian eigensolver,
//!   fractional powers, singular values, trace and determinant.
//! - [`norms`]: the unitarily invariant norm family used to quantify
//!   "for every unitarily invariant norm" claims.
//! - [`checks`]: one executable check per matrix inequality, each returning a
//!   [`checks::Verdict`] with the full bound chain and its slacks.
//! - [`sampling`]: deterministic, splittable sample generation.
//! - [`harness`]: the check registry plus the suite, sweep and audit runners
//!   behind the command-line front end.

pub mod checks;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod norms;
pub mod sampling;
pub mod scalar;
mod variant;

pub use error::{Error, Result};
pub use variant::Variant;
