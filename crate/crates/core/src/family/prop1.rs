use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::index::{indices_up_to, MultiIndex};
use super::poles::poly_pole_order;
use super::{check_tangency, Family, FamilyError, VectorField, VerticalJetLocus, PROP1_UNKNOWNS};
use crate::algebra::{int, solve_cramer, Monomial, MultiPoly, PolyMatrix, Rational, RationalMatrix, Var};
use crate::jets::derivative_along_jet;

/// Smallest surface degree whose index set contains every `|α| ≤ 3`.
pub const PROP1_DEGREE: u32 = 3;

/// The 16 slots `|α| ≤ 3` other than the four unknowns, graded-lex ascending.
pub fn tail_slots() -> Vec<MultiIndex> {
    indices_up_to(3)
        .into_iter()
        .filter(|a| !PROP1_UNKNOWNS.contains(a))
        .collect()
}

/// `det(ξ_j^(i))` over `1 ≤ i, j ≤ 3`, rows indexed by the jet order.
pub fn wronskian(family: &Family) -> Result<MultiPoly, FamilyError> {
    let rows = (0..3)
        .map(|i| (0..3).map(|j| family.poly(family.xi[j][i])).collect())
        .collect();
    Ok(PolyMatrix::from_rows(&family.arena, rows)?.determinant()?)
}

/// Numeric Wronskian; `jets[j][i]` is `ξ_{j+1}^(i+1)`.
pub fn wronskian_at(jets: &[[Rational; 3]; 3]) -> Result<Rational, FamilyError> {
    let rows = (0..3).map(|i| (0..3).map(|j| jets[j][i].clone()).collect()).collect();
    Ok(RationalMatrix::from_rows(rows)?.determinant()?)
}

/// `D_k(p)` for `k = 0..=3`, the identity at `k = 0`.
fn jet_images(family: &Family, p: &MultiPoly) -> Result<[MultiPoly; 4], FamilyError> {
    let symbols = family.affine_symbols();
    let mut out = vec![p.clone()];
    for k in 1..=3 {
        out.push(derivative_along_jet(p, k, &symbols)?);
    }
    Ok(out.try_into().expect("four orders"))
}

/// Row `k`, column `c`: `D_k(z^α)` for the `c`-th unknown slot.
pub fn prop1_matrix(family: &Family) -> Result<PolyMatrix, FamilyError> {
    let mut m = PolyMatrix::zeros(&family.arena, 4, 4);
    for (c, alpha) in PROP1_UNKNOWNS.iter().enumerate() {
        for (k, img) in jet_images(family, &family.z_poly(alpha))?.into_iter().enumerate() {
            m.set(k, c, img);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct Prop1Solution {
    pub family: Arc<Family>,
    /// Common Cramer denominator.
    pub denominator: MultiPoly,
    /// Numerators for the four unknown slots.
    pub numerators: BTreeMap<MultiIndex, MultiPoly>,
    pub tail: BTreeMap<MultiIndex, MultiPoly>,
}

impl Prop1Solution {
    /// The a-only field multiplied through by the denominator.
    pub fn cleared_field(&self) -> Result<VectorField, FamilyError> {
        let mut v = VectorField::zero(self.family.clone());
        for (alpha, n) in &self.numerators {
            v.set_a(alpha, n.clone())?;
        }
        for (alpha, t) in &self.tail {
            v.set_a(alpha, t * &self.denominator)?;
        }
        Ok(v)
    }

    /// Pole order of the numerators; the denominator is credited nothing.
    pub fn pole_order(&self) -> u32 {
        self.numerators
            .values()
            .map(|n| poly_pole_order(&self.family, n))
            .max()
            .unwrap_or(0)
    }
}

/// Solve the four conditions `Σ_{|α|≤3} v_α D_k(z^α) = 0` for the unknown slots,
/// given the tail coefficients.
pub fn prop1_solve(
    family: &Arc<Family>,
    tail: &BTreeMap<MultiIndex, MultiPoly>,
) -> Result<Prop1Solution, FamilyError> {
    let mut rhs: Vec<MultiPoly> = (0..4).map(|_| MultiPoly::zero(&family.arena)).collect();
    for (alpha, c) in tail {
        if !family.t.contains_key(alpha) {
            return Err(FamilyError::NotTailSlot(*alpha));
        }
        for (k, img) in jet_images(family, &family.z_poly(alpha))?.iter().enumerate() {
            rhs[k] = &rhs[k] - &(c * img);
        }
    }
    let sol = solve_cramer(&prop1_matrix(family)?, &rhs)?;
    Ok(Prop1Solution {
        family: family.clone(),
        denominator: sol.denominator,
        numerators: PROP1_UNKNOWNS.iter().copied().zip(sol.numerators).collect(),
        tail: tail.clone(),
    })
}

/// The four numerator monomial shapes, as bounds on
/// `(deg z, deg ξ^(1), deg ξ^(2), deg ξ^(3))`.
pub const MONOMIAL_CASES: [[u32; 4]; 4] = [[3, 1, 1, 1], [2, 3, 0, 1], [2, 2, 2, 0], [1, 4, 1, 0]];

pub const CASE_LABELS: [&str; 4] = ["i", "ii", "iii", "iv"];

/// `(deg z, deg ξ^(1), deg ξ^(2), deg ξ^(3))` over the first three coordinates.
pub fn degree_profile(family: &Family, m: &Monomial) -> [u32; 4] {
    let order = |i: usize| -> Vec<Var> { (0..3).map(|j| family.xi[j][i]).collect() };
    [
        m.degree_in(&family.affine_z()),
        m.degree_in(&order(0)),
        m.degree_in(&order(1)),
        m.degree_in(&order(2)),
    ]
}

/// Indices into [`MONOMIAL_CASES`] whose bounds the monomial meets.
pub fn matching_cases(family: &Family, m: &Monomial) -> Vec<usize> {
    let p = degree_profile(family, m);
    (0..4)
        .filter(|&c| (0..4).all(|r| p[r] <= MONOMIAL_CASES[c][r]))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop1SlotAudit {
    pub alpha: MultiIndex,
    pub pole_order: u32,
    pub denominator_is_wronskian: bool,
    pub residuals_zero: bool,
    /// Numerator monomials meeting each case.
    pub case_hits: [usize; 4],
    /// Numerator monomials meeting that case and no other.
    pub exclusive_hits: [usize; 4],
    pub uncovered: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop1Audit {
    pub slots: Vec<Prop1SlotAudit>,
    pub max_pole_order: u32,
    pub zero_tail_gives_zero: bool,
    pub case_hits: [usize; 4],
    pub exclusive_hits: [usize; 4],
    pub verified: bool,
}

pub const PROP1_POLE_BOUND: u32 = 12;

fn audit_slot(
    locus: &VerticalJetLocus,
    w: &MultiPoly,
    alpha: &MultiIndex,
) -> Result<Prop1SlotAudit, FamilyError> {
    let f = &locus.family;
    let tail = BTreeMap::from([(*alpha, f.poly(f.t[alpha]))]);
    let sol = prop1_solve(f, &tail)?;
    let residuals_zero = check_tangency(locus, &sol.cleared_field()?)?.is_none();
    let mut case_hits = [0; 4];
    let mut exclusive_hits = [0; 4];
    let mut uncovered = Vec::new();
    for n in sol.numerators.values() {
        for (m, _) in n.terms() {
            let cases = matching_cases(f, m);
            for &c in &cases {
                case_hits[c] += 1;
            }
            match cases.as_slice() {
                [] => uncovered.push(MultiPoly::term(&f.arena, m.clone(), int(1)).to_string()),
                [only] => exclusive_hits[*only] += 1,
                _ => {}
            }
        }
    }
    Ok(Prop1SlotAudit {
        alpha: *alpha,
        pole_order: sol.pole_order(),
        denominator_is_wronskian: sol.denominator == *w,
        residuals_zero,
        case_hits,
        exclusive_hits,
        uncovered,
    })
}

/// Solve slot by slot with a single symbolic tail entry and audit every numerator.
pub fn prop1_audit() -> Result<Prop1Audit, FamilyError> {
    let locus = VerticalJetLocus::for_degree(PROP1_DEGREE)?;
    let f = &locus.family;
    let w = wronskian(f)?;
    let slots: Vec<Prop1SlotAudit> = tail_slots()
        .par_iter()
        .map(|alpha| audit_slot(&locus, &w, alpha))
        .collect::<Result<_, _>>()?;
    let zero = prop1_solve(f, &BTreeMap::new())?;
    let zero_tail_gives_zero = zero.numerators.values().all(MultiPoly::is_zero);
    let max_pole_order = slots.iter().map(|s| s.pole_order).max().unwrap_or(0);
    let mut case_hits = [0; 4];
    let mut exclusive_hits = [0; 4];
    for s in &slots {
        for c in 0..4 {
            case_hits[c] += s.case_hits[c];
            exclusive_hits[c] += s.exclusive_hits[c];
        }
    }
    let verified = max_pole_order <= PROP1_POLE_BOUND
        && zero_tail_gives_zero
        && slots
            .iter()
            .all(|s| s.denominator_is_wronskian && s.residuals_zero && s.uncovered.is_empty());
    Ok(Prop1Audit {
        slots,
        max_pole_order,
        zero_tail_gives_zero,
        case_hits,
        exclusive_hits,
        verified,
    })
}
