use thiserror::Error;

/// Errors raised by the simplex Bernstein routines.
///
/// Every message starts with the variant name so command-line front ends can
/// print a single line that names the violated invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DegreeMismatch: |v| = {total} exceeds degree n = {degree}")]
    DegreeMismatch { total: u32, degree: u32 },

    #[error("DimensionMismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("OutOfSimplex: {0}")]
    OutOfSimplex(String),

    #[error("TruncationTooSmall: truncation {truncation} is below |v| = {total}")]
    TruncationTooSmall { truncation: u32, total: u32 },

    #[error("InvalidQ: q = {0} is outside (0, 1]")]
    InvalidQ(f64),

    #[error("HypothesisViolated: m = {m} exceeds min(|v| = {total}, n = {degree})")]
    HypothesisViolated { m: u32, total: u32, degree: u32 },

    #[error("ArityMismatch: function `{label}` has arity {arity}, point has {found} coordinates")]
    ArityMismatch {
        label: String,
        arity: usize,
        found: usize,
    },

    #[error("EmptyGrid: evaluation grid has no points")]
    EmptyGrid,

    #[error("EmptyDegrees: degree list is empty")]
    EmptyDegrees,

    #[error("InvalidDegrees: {0}")]
    InvalidDegrees(String),

    #[error("InvalidGridStep: {0}")]
    InvalidGridStep(String),

    #[error("InvalidAxis: axis {axis} is outside 1..={dim}")]
    InvalidAxis { axis: usize, dim: usize },

    #[error("InvalidTransform: {0}")]
    InvalidTransform(String),

    #[error("InvalidPermutation: {0}")]
    InvalidPermutation(String),

    #[error("InvalidDimension: k must be at least 1")]
    InvalidDimension,

    #[error("UnknownFunction: `{label}` (available: {available})")]
    UnknownFunction { label: String, available: String },
}

pub type Result<T> = std::result::Result<T, Error>;
