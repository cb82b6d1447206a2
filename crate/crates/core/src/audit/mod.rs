//! Claim-level audit reports and the suites the command line runs.

mod report;
mod suites;

pub use report::{AuditReport, ClaimResult, Status, TOOL_VERSION};
pub use suites::{
    alpha_report, chi, chi_leading_report, filtration, filtration_brute_force, jets_roundtrip, threshold_report,
    verify_lemma1, verify_lemma2, verify_poles, verify_prop1, verify_tangency, AuditError, FieldFamily,
    DEFAULT_MAX_M, DEFAULT_SWEEP_MAX_DEGREE, EXPECTED_THRESHOLD,
};
