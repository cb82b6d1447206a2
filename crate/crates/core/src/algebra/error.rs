use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different variable arenas")]
    ArenaMismatch,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular system (determinant {determinant})")]
    SingularSystem { determinant: Rational },
    #[error("solution residual is not identically zero: {0}")]
    ResidualNonzero(String),
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}
