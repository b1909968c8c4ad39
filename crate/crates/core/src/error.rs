use thiserror::Error;

/// Errors raised by the coexistence library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {actual}")]
    Shape {
        dim: usize,
        expected: usize,
        actual: usize,
    },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("spectrum out of range [0, 1]: eigenvalue {eigenvalue}")]
    SpectrumOutOfRange { eigenvalue: f64 },

    #[error("not an orthogonal projection (idempotence residual {residual:e})")]
    NotProjection { residual: f64 },

    #[error("invalid Bloch parameters: |v| = {norm} exceeds min(alpha, 2 - alpha) for alpha = {alpha}")]
    InvalidBloch { alpha: f64, norm: f64 },

    #[error("{count} effects exceed the permutation limit of {limit}")]
    CombinatorialLimit { count: usize, limit: usize },

    #[error("vector is not normalized (norm {norm})")]
    NotUnitVector { norm: f64 },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
