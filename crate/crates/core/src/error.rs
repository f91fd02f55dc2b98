use thiserror::Error;

pub type Result<T> = std::result::Result<T, ScatterError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatterError {
    #[error("shape mismatch: expected {expected:?}, got {actual:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        actual: Vec<usize>,
    },

    #[error("data length {len} does not match shape {shape:?}")]
    DataLength { shape: Vec<usize>, len: usize },

    #[error("subsampling factor {factor} is not a power of two dividing axis length {len}")]
    InvalidFactor { factor: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The grid violates the planner's shape contract (power-of-two axes,
    /// divisibility by 2^J, supported dimensionality).
    #[error("shape contract violated: {0}")]
    ShapeContract(String),

    #[error("input contains non-finite values")]
    NonFinite,

    #[error("input of {samples} samples is too large for the reference implementation (max {max})")]
    TooLarge { samples: usize, max: usize },
}

impl ScatterError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        ScatterError::InvalidParameter(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        ScatterError::ShapeContract(msg.into())
    }
}
