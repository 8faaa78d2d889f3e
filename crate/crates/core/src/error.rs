use thiserror::Error;

/// Errors raised while loading, validating or analysing a kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed kernel document: {0}")]
    Malformed(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown symbol label `{label}` in context `{context}`")]
    UnknownSymbol { label: String, context: String },

    #[error("duplicate context suffix `{0}`")]
    DuplicateSuffix(String),

    #[error("context `{suffix}` has length {len}, outside 1..={order}")]
    SuffixLength {
        suffix: String,
        len: usize,
        order: usize,
    },

    #[error("all-false support row at context `{0}`")]
    AllFalseSupport(String),

    #[error("context `{context}`: {reason}")]
    ProbsMismatch { context: String, reason: String },

    #[error("vector of length {got} where the alphabet has {expected} symbols (context `{context}`)")]
    VectorLength {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("word has length {got}, expected {expected}")]
    WordLength { expected: usize, got: usize },

    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolIndex { index: usize, size: usize },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state space of {states} states exceeds the cap of {cap}")]
    StateSpaceTooLarge { states: String, cap: usize },

    #[error("state set is not a closed communicating class: {0}")]
    NotClosedClass(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
