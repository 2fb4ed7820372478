use thiserror::Error;

/// Errors raised by state construction and divergence evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (asymmetry {residual:e} exceeds {bound:e})")]
    NonHermitian { residual: f64, bound: f64 },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not one (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("eigenvector columns are not orthonormal (Gram residual {residual:e})")]
    NonOrthonormal { residual: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("negative power {exponent} of a singular state requires the pseudo-inverse flag")]
    SingularPower { exponent: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("norm-form hypothesis fails at cell ({i}, {j}): zero overlap with nonzero weight")]
    HypothesisFailed { i: usize, j: usize },

    #[error("sigma is singular")]
    SingularSigma,

    #[error("operator domain condition violated at cell ({i}, {j})")]
    DomainViolation { i: usize, j: usize },

    #[error("series diverges")]
    DivergentSeries,

    #[error("no certified tail bound for this term family: {0}")]
    UnsupportedTail(String),

    #[error("tail bound {bound:e} not reached within {terms} terms")]
    TailBoundNotMet { terms: u64, bound: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
