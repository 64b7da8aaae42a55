use alloc::string::String;

/// Errors reported by the core routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("not a permutation of 0..{len}")]
    InvalidPermutation { len: usize },

    #[error("word enumeration exceeded the cap of {cap} words")]
    WordCapExceeded { cap: usize },

    #[error("invalid graded space: {0}")]
    InvalidSpace(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("matrix is not symmetric positive semidefinite")]
    NotPositiveSemidefinite,

    #[error("matrix is not square or not symmetric")]
    NotSymmetric,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge to relative tolerance {tolerance:e} within {max_nodes} nodes per axis")]
    QuadratureNonConvergence { tolerance: f64, max_nodes: usize },

    #[error("series tail bound {bound:e} exceeds the allowed {allowed:e} with {terms} terms")]
    TailBound { bound: f64, allowed: f64, terms: usize },

    #[error("configuration of {points} points exceeds the limit of {limit}")]
    ConfigurationTooLarge { points: usize, limit: usize },

    #[error("quadrature disagrees with closed form: {quadrature} vs {closed_form}")]
    ClosedFormMismatch { quadrature: f64, closed_form: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
