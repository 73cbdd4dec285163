use thiserror::Error;

/// Errors shared by every norm and group operation.
#[derive(Debug, Error)]
pub enum Error {
    /// A function's length does not match the measure space it is paired with.
    #[error("alignment error: function has {function_len} values but the space has {space_len} points")]
    Alignment {
        function_len: usize,
        space_len: usize,
    },

    /// A scalar parameter is outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function value or weight is NaN or infinite.
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// A decomposition does not reconstruct the function it claims to.
    #[error("invalid decomposition: reconstruction residual {residual:e} exceeds {tolerance:e}")]
    InvalidDecomposition { residual: f64, tolerance: f64 },

    /// A group element index is out of range.
    #[error("invalid group element {index} for group of order {order}")]
    InvalidElement { index: usize, order: usize },

    /// The operation requires a cyclic group.
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    /// A dominated-monotonicity precondition failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
