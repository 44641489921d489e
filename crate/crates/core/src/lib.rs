//! Numerical workbench for the finite noncommutative geometry of the
//! Standard Model internal space.
//!
//! The crate builds the finite real spectral triple from physical Yukawa
//! parameters, verifies the real-spectral-triple axioms, assembles and
//! checks quantum-isometry corepresentations at the level of concrete
//! finite-dimensional representations of the generators, and computes
//! bosonic/fermionic spectral actions together with their invariance
//! residuals.
//!
//! Everything is dense complex linear algebra; the `parallel` feature
//! (on by default) routes the hot kernels through rayon.

pub mod action;
pub mod cqgrep;
pub mod isometry;
pub mod numlin;
pub mod realform;
pub mod report;
pub mod rng;
pub mod smtriple;
pub mod triple;

use thiserror::Error;

/// Default relative tolerance used by every check that does not receive
/// an explicit one. Residuals are compared against `tol * sqrt(dim)`
/// scaled by the operand norms.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("contract error: {0}")]
    Contract(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("containment error: {0}")]
    Containment(String),
}

pub type Result<T> = std::result::Result<T, Error>;
