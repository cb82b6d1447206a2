use std::collections::HashMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use super::report::ClaimResult;
use crate::algebra::{format_rational, int, Rational};
use crate::family::{
    admissible_alphas, arrangements, lemma1_check, lemma1_symbolic, lemma2_min_degree, lemma2_solve, lemma2_sweep,
    lemma2_sweep_indices, package1_field, poly_pole_order, pole_order_audit, prop1_audit, tangency_sweep, Family,
    FamilyError, Pattern, SlantMatrix, VerticalJetLocus, CASE_LABELS, PROP1_POLE_BOUND,
};
use crate::intersection::{
    alpha, alpha_value, chi_graded_sum, chi_graded_sum_direct, chi_leading, chi_leading_transcribed,
    chi_partition_polynomial, euler_char_schur, filtration_enumerate, finite_difference_leading, relative_error,
    threshold_search, vars, AlphaSource, AsymptoticCoefficient, IntersectionError, Partition, DEFAULT_MAX_DEGREE,
};
use crate::jets::{run_jet_suite, JetError};

const TANGENCY: &str = "tangency conditions for first-package fields";
const LINEAR_FIELDS: &str = "tangent fields linear in the parameters";
const SLANT_SYSTEM: &str = "slanted field system for the high-order coefficients";
const WRONSKIAN_SOLVE: &str = "Wronskian solve for the low-order coefficients";
const PACKAGE_POLES: &str = "pole order of first-package fields";
const WRONSKIAN_POLES: &str = "pole bound for Wronskian-denominator fields";
const JET_CHANGE: &str = "logarithmic jet coordinate change";
const FILTRATION: &str = "graded pieces of the order-3 jet differential filtration";
const RIEMANN_ROCH: &str = "Riemann-Roch for Schur powers of the logarithmic cotangent bundle";
const CHI_LEADING: &str = "leading coefficient of the Euler characteristic";
const ALPHA: &str = "leading coefficient of the twisted lower bound";
const THRESHOLD: &str = "degree threshold for a positive twisted leading coefficient";

/// Reference degree bound that the threshold search is checked against.
pub const EXPECTED_THRESHOLD: u32 = 586;
/// Sweep oracle for the Euler characteristic kicks in up to this `m`.
pub const DEFAULT_MAX_M: u64 = 60;
pub const DEFAULT_SWEEP_MAX_DEGREE: u32 = 8;

#[derive(Debug, Error)]
pub enum AuditError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Intersection(#[from] IntersectionError),
    #[error("{0}")]
    Usage(String),
}

/// Values accepted by `--family`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFamily {
    Pattern(Pattern),
    All,
    Lemma1,
    Lemma2,
    Prop1,
}

impl FromStr for FieldFamily {
    type Err = AuditError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(FieldFamily::All),
            "lemma1" => Ok(FieldFamily::Lemma1),
            "lemma2" => Ok(FieldFamily::Lemma2),
            "prop1" => Ok(FieldFamily::Prop1),
            other => other
                .parse()
                .map(FieldFamily::Pattern)
                .map_err(|_| AuditError::Usage(format!("unknown family {other:?}"))),
        }
    }
}

impl std::fmt::Display for FieldFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldFamily::Pattern(p) => write!(f, "{p}"),
            FieldFamily::All => f.write_str("all"),
            FieldFamily::Lemma1 => f.write_str("lemma1"),
            FieldFamily::Lemma2 => f.write_str("lemma2"),
            FieldFamily::Prop1 => f.write_str("prop1"),
        }
    }
}

impl FieldFamily {
    fn patterns(self) -> Vec<Pattern> {
        match self {
            FieldFamily::Pattern(p) => vec![p],
            _ => Pattern::ALL.to_vec(),
        }
    }
}

fn idx(a: &[u32; 3]) -> String {
    format!("{}{}{}", a[0], a[1], a[2])
}

fn perm_id(p: &[usize; 3]) -> String {
    format!("{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1)
}

/// Tangency of every pattern field at each degree; the special families dispatch to their own suites.
pub fn verify_tangency(degrees: &[u32], family: FieldFamily, seed: u64) -> Result<Vec<ClaimResult>, AuditError> {
    match family {
        FieldFamily::Lemma1 => return verify_lemma1(degrees),
        FieldFamily::Lemma2 => return verify_lemma2(seed),
        FieldFamily::Prop1 => return verify_prop1(),
        _ => {}
    }
    let mut out = Vec::new();
    for &d in degrees {
        for o in tangency_sweep(d, &family.patterns())? {
            let id = format!("tangency/d{:02}/{}/alpha{}/perm{}", d, o.pattern, idx(&o.alpha), perm_id(&o.permutation));
            let payload = json!({
                "d": d,
                "pattern": o.pattern,
                "alpha": o.alpha,
                "permutation": o.permutation,
                "residuals_zero": o.verified,
            });
            let witness = o.witness.clone();
            out.push(ClaimResult::check(id, TANGENCY, o.verified, payload, || {
                let (k, r) = witness.expect("failed check has a residual");
                format!("condition {k}: {r}")
            }));
        }
    }
    Ok(out)
}

pub fn verify_lemma1(degrees: &[u32]) -> Result<Vec<ClaimResult>, AuditError> {
    let outcomes: Vec<_> = degrees.par_iter().map(|&d| lemma1_check(d)).collect::<Result<_, _>>()?;
    Ok(outcomes
        .into_iter()
        .map(|o| {
            let payload = json!({ "d": o.d, "max_a_degree": o.max_a_degree });
            let (witness, degree) = (o.witness.clone(), o.max_a_degree);
            ClaimResult::check(format!("lemma1/d{:02}", o.d), LINEAR_FIELDS, o.verified, payload, || match witness {
                Some((k, r)) => format!("condition {k}: {r}"),
                None => format!("a-degree {degree}"),
            })
        })
        .collect())
}

pub fn verify_lemma2(seed: u64) -> Result<Vec<ClaimResult>, AuditError> {
    Ok(lemma2_sweep(seed)?
        .into_iter()
        .map(|o| {
            let payload = serde_json::to_value(&o).expect("outcome serializes");
            let det = o.determinant.clone();
            ClaimResult::check(format!("lemma2/rho{}", idx(&o.rho)), SLANT_SYSTEM, o.verified, payload, || det)
        })
        .collect())
}

pub fn verify_prop1() -> Result<Vec<ClaimResult>, AuditError> {
    let audit = prop1_audit()?;
    let mut out: Vec<ClaimResult> = audit
        .slots
        .iter()
        .map(|s| {
            let ok = s.pole_order <= PROP1_POLE_BOUND && s.denominator_is_wronskian && s.residuals_zero && s.uncovered.is_empty();
            let payload = serde_json::to_value(s).expect("slot serializes");
            ClaimResult::check(format!("prop1/slot{}", idx(&s.alpha)), WRONSKIAN_SOLVE, ok, payload, || {
                s.uncovered
                    .first()
                    .cloned()
                    .unwrap_or_else(|| format!("pole order {}", s.pole_order))
            })
        })
        .collect();
    out.push(ClaimResult::check(
        "prop1/max-pole-order",
        WRONSKIAN_POLES,
        audit.max_pole_order <= PROP1_POLE_BOUND,
        json!({ "max_pole_order": audit.max_pole_order, "bound": PROP1_POLE_BOUND }),
        || audit.max_pole_order.to_string(),
    ));
    for (k, label) in CASE_LABELS.iter().enumerate() {
        out.push(ClaimResult::check(
            format!("prop1/case-{label}"),
            WRONSKIAN_SOLVE,
            audit.exclusive_hits[k] > 0,
            json!({ "hits": audit.case_hits[k], "exclusive_hits": audit.exclusive_hits[k] }),
            || "0".into(),
        ));
    }
    out.push(ClaimResult::check(
        "prop1/zero-tail",
        WRONSKIAN_SOLVE,
        audit.zero_tail_gives_zero,
        json!({ "zero_tail_gives_zero": audit.zero_tail_gives_zero }),
        || "nonzero solution for zero tail".into(),
    ));
    Ok(out)
}

/// Package-1 fields must score 4, Wronskian solutions at most 12; the linear-parameter and slanted fields are reported.
pub fn verify_poles(degrees: &[u32], family: FieldFamily, seed: u64) -> Result<Vec<ClaimResult>, AuditError> {
    let mut out = Vec::new();
    match family {
        FieldFamily::Lemma1 => {
            for &d in degrees {
                let f = Family::for_degree(d)?;
                let audit = pole_order_audit(&lemma1_symbolic(&f)?);
                out.push(ClaimResult::reported(format!("poles/lemma1/d{d:02}"), PACKAGE_POLES, json!(audit)));
            }
        }
        FieldFamily::Lemma2 => {
            for (i, rho) in lemma2_sweep_indices().iter().enumerate() {
                let locus = VerticalJetLocus::for_degree(lemma2_min_degree(rho))?;
                let slant = SlantMatrix::seeded(&locus.family, seed.wrapping_add(i as u64));
                let s = lemma2_solve(&locus, rho, &slant)?;
                let order = s.coefficient_polys().values().map(|p| poly_pole_order(&locus.family, p)).max();
                out.push(ClaimResult::reported(
                    format!("poles/lemma2/rho{}", idx(rho)),
                    SLANT_SYSTEM,
                    json!({ "order": order.unwrap_or(0) }),
                ));
            }
        }
        FieldFamily::Prop1 => {
            out.extend(verify_prop1()?.into_iter().filter(|c| c.claim_id == "prop1/max-pole-order"));
        }
        FieldFamily::All | FieldFamily::Pattern(_) => {
            for &d in degrees {
                let f = Family::for_degree(d)?;
                for pattern in family.patterns() {
                    for perm in arrangements(pattern) {
                        for a in admissible_alphas(d, pattern, &perm) {
                            let audit = pole_order_audit(&package1_field(&f, pattern, &a, &perm)?);
                            let id = format!("poles/d{d:02}/{pattern}/alpha{}/perm{}", idx(&a), perm_id(&perm));
                            let order = audit.order;
                            out.push(ClaimResult::check(id, PACKAGE_POLES, order == 4, json!(audit), || {
                                order.to_string()
                            }));
                        }
                    }
                }
            }
            if family == FieldFamily::All {
                out.extend(verify_prop1()?.into_iter().filter(|c| c.claim_id == "prop1/max-pole-order"));
            }
        }
    }
    Ok(out)
}

pub fn jets_roundtrip(samples: u64, seed: u64) -> Result<Vec<ClaimResult>, AuditError> {
    let o = run_jet_suite(samples, seed)?;
    let witness = || {
        o.first_failure
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_else(|| "no sample recorded".into())
    };
    let claim = |id: &str, passed: u64| {
        ClaimResult::check(
            id,
            JET_CHANGE,
            passed == samples,
            json!({ "passed": passed, "samples": samples, "seed": seed }),
            witness,
        )
    };
    Ok(vec![
        claim("jets/derivative", o.derivative_pass),
        claim("jets/oracle", o.oracle_pass),
        claim("jets/roundtrip", o.roundtrip_pass),
    ])
}

/// Independent triple scan used as the enumeration oracle.
pub fn filtration_brute_force(m: u64) -> Vec<(u64, [i64; 3])> {
    let mi = m as i64;
    let mut out = Vec::new();
    for gamma in 0..=mi {
        for l1 in 0..=mi {
            for l2 in 0..=l1 {
                let rest = mi - gamma - l1 - 2 * l2;
                if rest < 0 || rest % 3 != 0 {
                    continue;
                }
                let l3 = rest / 3;
                if 5 * gamma <= mi && l1 - l2 >= gamma && l2 - l3 >= gamma && l1 - l3 >= gamma {
                    out.push((gamma as u64, [l1, l2, l3]));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    out
}

fn filtration_claim(m: u64) -> ClaimResult {
    let fast: Vec<_> = filtration_enumerate(m).iter().map(|i| (i.gamma, i.lambda.0)).collect();
    let brute = filtration_brute_force(m);
    let ok = fast == brute;
    ClaimResult::check(
        format!("filtration/m{m:04}/brute-force"),
        FILTRATION,
        ok,
        json!({ "m": m, "count": fast.len(), "oracle_count": brute.len() }),
        || {
            let diff = fast
                .iter()
                .zip(&brute)
                .find(|(a, b)| a != b)
                .map(|(a, _)| *a)
                .or_else(|| fast.get(brute.len()).copied())
                .or_else(|| brute.get(fast.len()).copied());
            format!("{diff:?}")
        },
    )
}

/// A single `m` lists its indices; otherwise `1..=max_m` is checked against the oracle.
pub fn filtration(m: Option<u64>, max_m: u64) -> Vec<ClaimResult> {
    match m {
        Some(m) => {
            let indices: Vec<_> = filtration_enumerate(m)
                .iter()
                .map(|i| json!({ "gamma": i.gamma, "lambda": i.lambda.0 }))
                .collect();
            let mut out = vec![ClaimResult::reported(
                format!("filtration/m{m:04}/indices"),
                FILTRATION,
                json!({ "m": m, "count": indices.len(), "indices": indices }),
            )];
            if m <= max_m {
                out.push(filtration_claim(m));
            }
            out
        }
        None => (1..=max_m).into_par_iter().map(filtration_claim).collect(),
    }
}

fn lambda_id(l: &Partition) -> String {
    format!("{}-{}-{}", l.0[0], l.0[1], l.0[2])
}

/// `χ(Γ^λ)` with its interpolation cross-check, and optionally the graded sum at `m`.
pub fn chi(
    lambda: Option<Partition>,
    d: i64,
    m: Option<u64>,
    delta: Option<&Rational>,
    max_m: u64,
) -> Result<Vec<ClaimResult>, AuditError> {
    let mut out = Vec::new();
    if let Some(l) = lambda {
        let direct = euler_char_schur(&l, d)?;
        let interpolated = chi_partition_polynomial().evaluate(&l, &int(d));
        let payload = json!({ "lambda": l.0, "d": d, "chi": format_rational(&direct) });
        out.push(ClaimResult::check(
            format!("chi/lambda{}/d{d}", lambda_id(&l)),
            RIEMANN_ROCH,
            direct == interpolated,
            payload,
            || format_rational(&interpolated),
        ));
    }
    if let Some(m) = m {
        let fast = chi_graded_sum(m, d, delta)?;
        let mut payload = json!({ "m": m, "d": d, "graded_sum": format_rational(&fast) });
        if let Some(delta) = delta {
            payload["delta"] = json!(format_rational(delta));
        }
        let id = format!("chi/graded-sum/m{m:04}/d{d}");
        if m <= max_m {
            let direct = chi_graded_sum_direct(m, d, delta)?;
            out.push(ClaimResult::check(id, RIEMANN_ROCH, fast == direct, payload, || format_rational(&direct)));
        } else {
            out.push(ClaimResult::reported(id, RIEMANN_ROCH, payload));
        }
    }
    if out.is_empty() {
        return Err(AuditError::Usage("chi needs --lambda or --m".into()));
    }
    Ok(out)
}

fn restrict_delta(c: &AsymptoticCoefficient, delta: &Rational) -> AsymptoticCoefficient {
    AsymptoticCoefficient::new(c.poly.evaluate(&HashMap::from([(vars().delta, delta.clone())])))
}

/// The `m⁹` coefficient; at `δ = 0` each `d`-coefficient is checked against the reference polynomial,
/// and with a degree the finite-difference fit is compared.
pub fn chi_leading_report(delta: Option<&Rational>, fd_degree: Option<i64>) -> Result<Vec<ClaimResult>, AuditError> {
    let c = chi_leading();
    let mut out = Vec::new();
    match delta {
        None => out.push(ClaimResult::reported("chi-leading/polynomial", CHI_LEADING, json!(c))),
        Some(delta) => {
            let r = restrict_delta(c, delta);
            out.push(ClaimResult::reported(
                "chi-leading/polynomial",
                CHI_LEADING,
                json!({ "delta": format_rational(delta), "coefficient": r }),
            ));
            if delta == &int(0) {
                let shown = chi_leading_transcribed();
                for i in 0..=3 {
                    let (got, want) = (r.coeff(i, 0), shown.coeff(i, 0));
                    out.push(ClaimResult::check(
                        format!("chi-leading/coefficient/d{i}"),
                        CHI_LEADING,
                        got == want,
                        json!({ "power": i, "computed": format_rational(&got), "reference": format_rational(&want) }),
                        || format_rational(&got),
                    ));
                }
            }
        }
    }
    if let Some(d) = fd_degree {
        // Step 30 keeps every sample on one residue class of the quasi-polynomial.
        let fd = finite_difference_leading(d, 265, 30, 9)?;
        let exact = c.evaluate(&int(d), &int(0));
        let err = relative_error(&fd, &exact);
        let ok = err < Rational::new(1.into(), 10_000.into());
        out.push(ClaimResult::check(
            format!("chi-leading/finite-difference/d{d}"),
            CHI_LEADING,
            ok,
            json!({
                "d": d,
                "finite_difference": format_rational(&fd),
                "integrated": format_rational(&exact),
                "relative_error": format_rational(&err),
            }),
            || format_rational(&fd),
        ));
    }
    Ok(out)
}

/// Both sources side by side: values when `d` and `δ` are given, polynomials otherwise.
pub fn alpha_report(d: Option<i64>, delta: Option<&Rational>) -> Vec<ClaimResult> {
    [AlphaSource::Derived, AlphaSource::Transcribed]
        .into_iter()
        .map(|source| {
            let payload = match (d, delta) {
                (Some(d), Some(delta)) => json!(alpha_value(source, &int(d), delta)),
                (Some(d), None) => {
                    let p = alpha(source).in_delta(&int(d));
                    json!({ "d": d, "delta_coefficients": p.c.iter().map(format_rational).collect::<Vec<_>>() })
                }
                (None, Some(delta)) => json!({
                    "delta": format_rational(delta),
                    "coefficient": restrict_delta(alpha(source), delta),
                }),
                (None, None) => json!(alpha(source)),
            };
            ClaimResult::reported(format!("alpha/{}", source.name()), ALPHA, payload)
        })
        .collect()
}

pub fn threshold_report(source: AlphaSource, max_degree: Option<u32>) -> Result<Vec<ClaimResult>, AuditError> {
    let r = threshold_search(source, max_degree.unwrap_or(DEFAULT_MAX_DEGREE))?;
    let ok = r.threshold == EXPECTED_THRESHOLD && r.previous_infeasible;
    let mut payload = json!(r);
    payload["minimal_d"] = json!(r.threshold);
    payload["previous_d_fails"] = json!(r.previous_infeasible);
    payload["expected"] = json!(EXPECTED_THRESHOLD);
    Ok(vec![ClaimResult::check(
        format!("threshold/{}", source.name()),
        THRESHOLD,
        ok,
        payload,
        || r.threshold.to_string(),
    )])
}
