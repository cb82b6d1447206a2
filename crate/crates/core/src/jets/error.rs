use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("logarithmic coordinate {coordinate} has zero basepoint value")]
    PoleAtBasepoint { coordinate: usize },
    #[error("series reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("series composition needs an inner series with zero constant term")]
    CompositionConstantTerm,
    #[error("jet order {0} outside 1..=3")]
    OrderOutOfRange(u32),
    #[error("logarithmic index {index} outside 0..{n}")]
    InvalidFrame { index: usize, n: usize },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected a {expected} jet")]
    WrongStyle { expected: &'static str },
    #[error("polynomial is not numeric after substituting the jet: {0}")]
    NonNumeric(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
