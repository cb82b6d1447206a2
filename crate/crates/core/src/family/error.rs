use thiserror::Error;

use super::MultiIndex;
use crate::algebra::{AlgebraError, Rational};
use crate::jets::JetError;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("surface degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("pattern {pattern} needs exponents {floor:?} at alpha = {alpha:?}")]
    PatternFloor {
        pattern: String,
        alpha: MultiIndex,
        floor: MultiIndex,
    },
    #[error("unknown field pattern {0}")]
    UnknownPattern(String),
    #[error("alpha = {alpha:?} is outside the degree-{d} index set")]
    IndexOutOfRange { alpha: MultiIndex, d: u32 },
    #[error("rho = {0:?} needs every component at least 4")]
    RhoFloor(MultiIndex),
    #[error("degree {d} too small for rho = {rho:?}; need d >= {needed}")]
    DegreeTooSmall { d: u32, rho: MultiIndex, needed: u32 },
    #[error("system at rho = {rho:?} is singular (determinant {determinant})")]
    Singular { rho: MultiIndex, determinant: Rational },
    #[error("alpha = {0:?} is not a tail slot of the Wronskian system")]
    NotTailSlot(MultiIndex),
    #[error("slot polynomial is not linear in the unknowns: {0}")]
    NonLinearSlot(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Jet(#[from] JetError),
}
