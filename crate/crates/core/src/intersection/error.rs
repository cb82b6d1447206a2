use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};

#[derive(Debug, Error)]
pub enum IntersectionError {
    #[error("invalid partition {0:?}: entries must be weakly decreasing and non-negative")]
    InvalidPartition([i64; 3]),
    #[error("weights {0:?} are not weakly decreasing")]
    NotDominant([i64; 3]),
    #[error("surface degree must be at least 1, got {0}")]
    InvalidDegree(i64),
    #[error("m must be positive")]
    InvalidM,
    #[error("twist delta*m = {delta}*{m} is not an integer; choose m a multiple of the denominator of delta")]
    NonIntegralTwist { m: u64, delta: Rational },
    #[error("integrand is not homogeneous in the scaled variables")]
    NonHomogeneous,
    #[error("interpolation grid does not determine the polynomial: {0}")]
    DegenerateGrid(String),
    #[error("polytope is not full-dimensional or unbounded: {0}")]
    UnsupportedPolytope(String),
    #[error("no feasible degree found up to {max}")]
    ThresholdNotFound { max: u32 },
    #[error("integer overflow in fast summation")]
    Overflow,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
