use num_traits::ToPrimitive;
use serde::Serialize;

use super::leading::{alpha, delta_upper, AlphaSource};
use super::IntersectionError;
use crate::algebra::{format_rational, int, Rational};

/// Vanishing order is `δm(d-4)` against a pole order of 12, so `δ(d-4) > 12`.
pub const POLE_BOUND: i64 = 12;
pub const DEFAULT_MAX_DEGREE: u32 = 100_000;

/// Open twist interval `(12/(d-4), 1/18)`, or `None` when it is empty.
pub fn admissible_interval(d: u32) -> Option<(Rational, Rational)> {
    if d <= 4 {
        return None;
    }
    let lo = int(POLE_BOUND) / int(d as i64 - 4);
    let hi = delta_upper();
    (lo < hi).then_some((lo, hi))
}

/// A twist in the admissible interval with `α(d, δ) > 0`, decided by Sturm sequences.
pub fn feasible_twist(source: AlphaSource, d: u32) -> Option<Rational> {
    let (lo, hi) = admissible_interval(d)?;
    alpha(source).in_delta(&int(d as i64)).positive_witness(&lo, &hi)
}

#[derive(Clone, Debug, Serialize)]
pub struct SideCondition {
    /// `m (1/6 - 3δ) > 3d + 2`, evaluated at the witness twist.
    pub inequality: String,
    pub minimal_m: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub source: AlphaSource,
    pub threshold: u32,
    pub previous_infeasible: bool,
    pub interval: [String; 2],
    pub witness_delta: String,
    pub alpha_at_witness: String,
    pub side_condition: SideCondition,
}

fn side_condition(d: u32, delta: &Rational) -> SideCondition {
    let slack = Rational::new(1.into(), 6.into()) - int(3) * delta;
    let bound = int(3 * d as i64 + 2) / slack;
    let minimal_m = bound.floor().to_integer().to_u64().unwrap_or(u64::MAX).saturating_add(1);
    SideCondition {
        inequality: format!("m * (1/6 - 3*{}) > {}", format_rational(delta), 3 * d + 2),
        minimal_m,
    }
}

/// Smallest `d ≥ 5` admitting a twist with `α > 0`.
pub fn threshold_search(source: AlphaSource, max_d: u32) -> Result<ThresholdReport, IntersectionError> {
    for d in 5..=max_d {
        if let Some(witness) = feasible_twist(source, d) {
            let (lo, hi) = admissible_interval(d).expect("feasible implies nonempty");
            let value = alpha(source).evaluate(&int(d as i64), &witness);
            return Ok(ThresholdReport {
                source,
                threshold: d,
                previous_infeasible: feasible_twist(source, d - 1).is_none(),
                interval: [format_rational(&lo), format_rational(&hi)],
                witness_delta: format_rational(&witness),
                alpha_at_witness: format_rational(&value),
                side_condition: side_condition(d, &witness),
            });
        }
    }
    Err(IntersectionError::ThresholdNotFound { max: max_d })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_boundary() {
        assert!(admissible_interval(220).is_none());
        assert!(admissible_interval(221).is_some());
        let (lo, _) = admissible_interval(586).unwrap();
        assert_eq!(lo, Rational::new(2.into(), 97.into()));
    }

    #[test]
    fn derived_threshold() {
        let r = threshold_search(AlphaSource::Derived, 2000).unwrap();
        assert_eq!(r.threshold, 586);
        assert!(r.previous_infeasible);
        assert!(r.side_condition.minimal_m > 0);
    }

    #[test]
    fn transcribed_threshold() {
        let r = threshold_search(AlphaSource::Transcribed, 2000).unwrap();
        assert_eq!(r.threshold, 579);
        assert!(r.previous_infeasible);
    }
}
