use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable index {index} out of range 1..={var_count}")]
    VarOutOfRange { index: usize, var_count: usize },

    /// Both polarities of one variable appeared in a clause. A ternary
    /// column cannot hold that, so the caller has to decide what to do.
    #[error("clause contains both x{var} and -x{var}")]
    Tautology { var: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{var_count} variables exceeds the path-set capacity of {limit}")]
    Capacity { var_count: usize, limit: usize },

    #[error("leaf position {position} out of range for {var_count} variables")]
    PositionOutOfRange { position: u64, var_count: usize },

    #[error("invalid cell {0:?}; expected T, F or U")]
    InvalidCell(char),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
