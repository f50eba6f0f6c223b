use thiserror::Error;

/// Errors produced by the exact dimension engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The assembled matrix exceeds the configured entry cap; retry with a smaller degree.
    #[error("instance too large: {rows}x{cols} matrix exceeds the cap of {cap} entries")]
    InstanceTooLarge { rows: usize, cols: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero linear form")]
    ZeroForm,

    #[error("degree mismatch: factor of degree {factor} cannot map degree {source_degree} to degree {target}")]
    DegreeMismatch {
        factor: u32,
        source_degree: u32,
        target: u32,
    },

    #[error("degenerate facet {0:?}: vertices are affinely dependent")]
    DegenerateFacet(Vec<usize>),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
