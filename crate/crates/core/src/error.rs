//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// log-gamma evaluated at a pole (z a nonpositive integer).
    #[error("log_gamma pole at z = {0} (nonpositive integer)")]
    GammaPole(String),
    /// Barnes G vanishes at nonpositive integers; callers that cannot
    /// represent an exact zero receive this instead of a log.
    #[error("Barnes G is zero at z = {0}{}", match .factor { Some(f) => format!(" (factor {f})"), None => String::new() })]
    BarnesGZero { z: String, factor: Option<String> },
    /// Argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Sum mismatch in the G-ratio growth helper.
    #[error("exponent lists must have equal sums: |sum x - sum y| = {0:.3e}")]
    SumMismatch(f64),
    /// Jump exponents must not be nonzero integers.
    #[error("integer jump exponent beta = {0} is a trivial monomial factor; fold it into the smooth part")]
    IntegerBeta(String),
    /// Symbol specification failed validation.
    #[error("invalid symbol spec: {0}")]
    InvalidSpec(String),
    /// Coefficient window too small for the requested matrix.
    #[error("insufficient Fourier window: need K >= {needed}, have {have}")]
    InsufficientWindow { needed: i64, have: i64 },
    /// Panel quadrature failed to meet the target accuracy.
    #[error(
        "quadrature did not converge: achieved error estimate {achieved:.3e} > target {target:.3e}"
    )]
    QuadratureAccuracy { achieved: f64, target: f64 },
    /// A predictor was asked for a symbol outside its proven regime.
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    /// The requested closed form does not cover this symbol.
    #[error("no closed form available: {0}")]
    NoClosedForm(String),
    /// Experiment configuration rejected.
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    /// Rate fit needs at least three usable rows.
    #[error("rate fit needs >= 3 rows with nonzero error, have {0}")]
    InsufficientRows(usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
