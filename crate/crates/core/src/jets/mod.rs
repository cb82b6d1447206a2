//! Order-3 jets of holomorphic germs and the logarithmic/standard coordinate change.
//!
//! A jet is anchored at `t = 0`. In a logarithmic coordinate `z_j` the jet
//! data are the derivatives of the pullback of `dz_j/z_j`; in a standard
//! coordinate they come from `dz_j`. [`log_to_std`] and [`std_to_log`] convert
//! between the two with the explicit order-3 chain-rule polynomials.

mod coords;
mod derivation;
mod error;
mod sample;
mod series;
mod suite;

pub use coords::{
    jet_of_germ, log_to_std, pullback_form_derivatives, std_to_log, Form, JetCoordinates, JetFrame,
    JetStyle,
};
pub use derivation::{derivative_along_jet, derivative_along_jet_at, total_derivative, JetSymbols};
pub use error::JetError;
pub use sample::{compose_with_germ, JetSampler};
pub use series::{TruncatedSeries, SERIES_LEN};
pub use suite::{run_jet_suite, JetSuiteOutcome};
