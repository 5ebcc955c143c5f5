use thiserror::Error;

/// Errors raised by the evaluators and oracles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("non-finite value in input")]
    InvalidInput,

    #[error("parameters lie on the singular set: {0}")]
    SingularParameter(String),

    #[error("jet division by a jet with vanishing leading coefficient")]
    SingularJet,

    #[error("{what} requires N <= {cap}, got N = {requested}")]
    Resource {
        what: &'static str,
        cap: usize,
        requested: usize,
    },

    #[error("partition function vanishes; correlator normalization is degenerate")]
    DegenerateNormalization,

    #[error("index out of range: {0}")]
    IndexRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
