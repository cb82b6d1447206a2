//! Exact rational and sparse multivariate polynomial arithmetic.
//!
//! Everything in this module is exact; there is no floating point anywhere.
//! Polynomials live over a shared [`VarArena`] of named variables and are
//! kept in canonical form (no stored zero coefficients, graded-lex term map),
//! so structural equality is mathematical equality.

mod arena;
mod error;
mod linsolve;
mod matrix;
mod monomial;
mod poly;
mod rational;

pub use arena::{Arena, ArenaBuilder, Var, VarArena};
pub use error::AlgebraError;
pub use linsolve::{solve_cramer, solve_exact, solve_rational, CramerSolution};
pub use matrix::{PolyMatrix, RationalMatrix};
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub use rational::{format_rational, int, parse_rational, rat, serialize_rational, Rational};
