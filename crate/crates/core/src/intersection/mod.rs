//! Riemann–Roch on ℙ³ for Schur powers of the logarithmic cotangent bundle and
//! the asymptotics of order-3 logarithmic jet differentials.

mod chi;
mod cohom;
mod error;
mod filtration;
mod leading;
mod polytope;
mod schur;
mod sturm;
mod threshold;
mod vars;

pub use chi::{
    build_chi_polynomial, chi_graded_sum, chi_graded_sum_direct, chi_partition_polynomial, finite_difference_leading,
    grid_partition, grid_points, lambda_exponents, relative_error, ChiPolynomial, IntegerForm, D_NODES, LAMBDA_DEGREE,
};
pub use cohom::{log_cotangent_chern, log_cotangent_chern_from_residue, todd_p3, todd_p3_from_series, CohomClass};
pub use error::IntersectionError;
pub use filtration::{filtration_count, filtration_enumerate, for_each_index, FiltrationIndex};
pub use leading::{
    alpha, alpha_derived, alpha_transcribed, alpha_value, chi_leading, chi_leading_coefficient, chi_leading_transcribed,
    delta_upper, g_at, g_integral, g_polynomial, h2_constant, h2_leading, AlphaSource, AlphaValue,
    AsymptoticCoefficient, ALPHA_DENOMINATOR, ALPHA_TRANSCRIBED_TERMS, CHI_LEADING_TRANSCRIBED,
};
pub use polytope::{polytope_integrate, HalfSpace, LambdaFloor, Point, Polytope, Simplex};
pub use schur::{
    euler_char_schur, gt_weights, hrr, power_sum_expansion, power_sums, schur_character, weyl_dimension, Partition,
    SchurCharacter,
};
pub use sturm::UPoly;
pub use threshold::{
    admissible_interval, feasible_twist, threshold_search, SideCondition, ThresholdReport, DEFAULT_MAX_DEGREE,
    POLE_BOUND,
};
pub use vars::{vars, Vars};
