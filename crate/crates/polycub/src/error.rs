//! Crate-wide error type.

use thiserror::Error;

/// Errors produced while building weights, rules, or splines, or while
/// reading the file formats understood by the CLI.
#[derive(Error, Debug)]
pub enum Error {
    #[error("harmonic index ({k},{ell}) is invalid: ell must be 1 when k = 0 and 1 or 2 when k >= 1")]
    InvalidHarmonicIndex { k: u32, ell: u32 },

    #[error("angular grid size M = {0} must be odd and at least 3")]
    InvalidAngularGrid(usize),

    #[error("dimension mismatch: expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("disc radius R = {0} must be positive and finite")]
    InvalidRadius(f64),

    #[error("power-law exponent gamma = {0} must be finite and > -2 for an integrable profile")]
    DivergentProfile(f64),

    #[error("radial profile changes sign near r = {0:.6}; per-harmonic Gaussian quadrature needs a single sign")]
    SignChange(f64),

    #[error("tabulated profile needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("radial profile for ({k},{ell}) is identically zero; no Gaussian rule exists for an empty measure")]
    EmptyMeasure { k: u32, ell: u32 },

    #[error("moment s = {s} of the measure for ({k},{ell}) diverges (integrand exponent {exponent} <= -1)")]
    DivergentMoment { s: usize, k: u32, ell: u32, exponent: f64 },

    #[error("unknown built-in weight {0:?}; expected \"w1\" or \"w2\"")]
    UnknownWeight(String),

    #[error("truncation order K_trunc = {k_trunc} is invalid for {id}: {reason}")]
    InvalidTruncation { id: &'static str, k_trunc: u32, reason: &'static str },

    #[error("Gauss rule needs N >= 1 nodes")]
    EmptyRule,

    #[error("symmetric tridiagonal eigensolve failed to converge")]
    EigenFailure,

    #[error("invalid radial knots: {0}")]
    InvalidKnots(String),

    #[error("spline data length {got} does not match knot count {expected}")]
    SplineDataMismatch { expected: usize, got: usize },

    #[error("r = {0} lies outside the spline domain [0, {1}]")]
    OutOfDomain(f64, f64),

    #[error("invalid cubature parameters: {0}")]
    InvalidParameters(String),

    #[error("negative argument: {0}")]
    NegativeArgument(String),

    #[error("{path}:{line}: {message}")]
    ParseError { path: String, line: usize, message: String },

    #[error("rule file {path} is inconsistent: {message}")]
    BadRuleFile { path: String, message: String },

    #[error("samples file {path} is inconsistent: {message}")]
    BadSamplesFile { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
