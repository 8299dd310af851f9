//! Error type shared by all modules.

use thiserror::Error;

/// Failures raised by the numerical routines and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {name} = {value} outside {lo}..={hi}")]
    IndexOutOfRange { name: &'static str, value: i64, lo: i64, hi: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("|λ| = {modulus} is outside the admissible disc |λ| < a/3 = {limit} and q is not compactly supported")]
    DomainViolation { modulus: f64, limit: f64 },

    #[error("Neumann iteration did not converge: residual {residual:e} after {iterations} steps")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("λ = {0} is outside the region where the transform converges")]
    RegionViolation(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("vanishing denominator: {0}")]
    ZeroDenominator(String),

    #[error("log branch jump of {jump:.3} between τ = {tau_a} and τ = {tau_b}; refine the τ grid")]
    BranchJump { jump: f64, tau_a: f64, tau_b: f64 },

    #[error("jump coefficient vanishes on the contour at τ = {0}")]
    ZeroOnContour(f64),

    #[error("canonical function has nonzero winding {0}")]
    NonzeroIndex(i64),

    #[error("singular system: {0}")]
    SingularMatrix(String),

    #[error("residual {residual:e} exceeds {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("probe values disagree: spread {spread:e} exceeds {tol:e}")]
    ExtrapolationUnstable { spread: f64, tol: f64 },

    #[error("scattering data rejected by condition ({condition}): {detail}")]
    Validation { condition: &'static str, detail: String },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
