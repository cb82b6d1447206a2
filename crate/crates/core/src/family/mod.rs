//! The universal degree-`d` surface in the chart `z4 ≠ 0`, its vertical logarithmic
//! 3-jet locus, and the explicit tangent vector fields on it.

mod arena;
mod error;
mod field;
pub mod index;
mod lemma1;
mod lemma2;
mod locus;
mod package1;
mod poles;
mod prop1;

pub use arena::{Family, PROP1_UNKNOWNS};
pub use error::FamilyError;
pub use field::VectorField;
pub use index::MultiIndex;
pub use lemma1::{lemma1_check, lemma1_field, lemma1_symbolic, Lemma1Outcome};
pub use lemma2::{
    falling_factorial_matrix, lemma2_check, lemma2_min_degree, lemma2_solve, lemma2_sweep, lemma2_sweep_indices,
    lemma2_system, monomial_derivative_matrix, Lemma2Outcome, Lemma2Solution, Lemma2System, SlantMatrix,
};
pub use locus::VerticalJetLocus;
pub use package1::{
    admissible_alphas, arrangements, check_tangency, floor, package1_field, six_term_220_field, tangency_sweep,
    Pattern, Permutation, TangencyOutcome,
};
pub use poles::{monomial_pole_order, pole_order_audit, pole_weight, poly_pole_order, PoleAudit};
pub use prop1::{
    degree_profile, matching_cases, prop1_audit, prop1_matrix, prop1_solve, tail_slots, wronskian, wronskian_at,
    Prop1Audit, Prop1SlotAudit, Prop1Solution, CASE_LABELS, MONOMIAL_CASES, PROP1_DEGREE, PROP1_POLE_BOUND,
};
