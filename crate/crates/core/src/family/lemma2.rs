use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::index::{checked_sub, falling, indices_up_to, multinomial, norm, unit, MultiIndex};
use super::{Family, FamilyError, VectorField, VerticalJetLocus};
use crate::algebra::{
    format_rational, int, rat, solve_exact, Monomial, MultiPoly, Rational, RationalMatrix, Var,
};

/// 4×4 matrix `A` acting on jets by `w^(k) = A ξ^(k)`, with its fourth column identically zero.
///
/// Only the first three columns are stored; `entries[j][i]` is `A_{j+1}^{i+1}`.
#[derive(Clone, Debug)]
pub struct SlantMatrix {
    pub entries: [[MultiPoly; 3]; 4],
}

impl SlantMatrix {
    pub fn zero(family: &Family) -> Self {
        SlantMatrix {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| MultiPoly::zero(&family.arena))),
        }
    }

    pub fn rational(family: &Family, values: &[[Rational; 3]; 4]) -> Self {
        SlantMatrix {
            entries: std::array::from_fn(|j| {
                std::array::from_fn(|i| MultiPoly::constant(&family.arena, values[j][i].clone()))
            }),
        }
    }

    /// Entries are the arena symbols `A{j}_{i}`.
    pub fn symbolic(family: &Family) -> Self {
        SlantMatrix {
            entries: family.slant.map(|row| row.map(|v| family.poly(v))),
        }
    }

    /// Reproducible rational entries with numerators in `-5..=5` and denominators in `1..=3`.
    pub fn seeded(family: &Family, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: [[Rational; 3]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))));
        Self::rational(family, &values)
    }

    /// `Σ_{j,k} (A ξ^(k))_j ∂/∂ξ_j^(k)`.
    pub fn field(&self, family: &Arc<Family>) -> VectorField {
        let f = family;
        let mut v = VectorField::zero(f.clone());
        for j in 0..4 {
            for k in 0..3 {
                let mut w = MultiPoly::zero(&f.arena);
                for i in 0..3 {
                    w = &w + &(&self.entries[j][i] * &f.poly(f.xi[i][k]));
                }
                v.set(f.xi[j][k], w);
            }
        }
        v
    }
}

/// Exact-degree margin: the index set must contain every `|ρ| + |β|` with `|β| ≤ 3`.
pub fn lemma2_min_degree(rho: &MultiIndex) -> u32 {
    norm(rho) + 3
}

/// The 20×20 system for the coefficients `v_β^{ρ-β}` at one `ρ`.
#[derive(Clone, Debug)]
pub struct Lemma2System {
    pub rho: MultiIndex,
    pub d: u32,
    /// Column order: `β` ascending in graded-lex.
    pub unknowns: Vec<MultiIndex>,
    /// Row order: derivative multi-index `D`, ascending in graded-lex.
    pub slots: Vec<MultiIndex>,
    pub matrix: RationalMatrix,
    /// Right-hand sides, linear in the `a` variables.
    pub rhs: Vec<MultiPoly>,
    /// Normalized slot polynomials `Σ_β M[D][β] u_β - rhs[D]`.
    pub slot_polys: Vec<MultiPoly>,
    /// Slots that must vanish once the system holds (`ξ^(2)`, `ξ^(3)` and `ξ^(2)ξ^(1)` coefficients).
    pub implied_polys: Vec<MultiPoly>,
    family: Arc<Family>,
}

fn check_rho(rho: &MultiIndex, d: u32) -> Result<(), FamilyError> {
    if rho.iter().any(|&r| r < 4) {
        return Err(FamilyError::RhoFloor(*rho));
    }
    let needed = lemma2_min_degree(rho);
    if d < needed {
        return Err(FamilyError::DegreeTooSmall { d, rho: *rho, needed });
    }
    Ok(())
}

struct SlotExtractor<'a> {
    family: &'a Family,
    over: Vec<Var>,
    u_vars: Vec<Var>,
}

impl SlotExtractor<'_> {
    fn new(family: &Family) -> SlotExtractor<'_> {
        let mut over: Vec<Var> = family.z.to_vec();
        over.extend(family.xi.iter().flatten());
        SlotExtractor {
            family,
            over,
            u_vars: family.u.values().copied().collect(),
        }
    }

    /// Coefficient of `jet · z^zexp` in `p`, as a polynomial in the remaining variables.
    fn slot(&self, p: &MultiPoly, jet: &[(usize, usize)], zexp: &MultiIndex) -> MultiPoly {
        let f = self.family;
        let mut pattern = f.z_monomial(zexp);
        for &(j, order) in jet {
            pattern = pattern.mul(&Monomial::var(f.xi[j][order - 1], 1));
        }
        p.coefficient(&self.over, &pattern)
    }

    /// Split `p = Σ c_β u_β + rest`, requiring rational `c_β`.
    fn linear_parts(&self, p: &MultiPoly, unknowns: &[MultiIndex]) -> Result<(Vec<Rational>, MultiPoly), FamilyError> {
        if p.degree_in(&self.u_vars) > 1 {
            return Err(FamilyError::NonLinearSlot(p.to_string()));
        }
        let mut coeffs = Vec::with_capacity(unknowns.len());
        for beta in unknowns {
            let v = self.family.u[beta];
            let c = p.coefficient(&self.u_vars, &Monomial::var(v, 1));
            coeffs.push(c.as_constant().ok_or_else(|| FamilyError::NonLinearSlot(c.to_string()))?);
        }
        let rest = p.coefficient(&self.u_vars, &Monomial::one());
        Ok((coeffs, rest))
    }
}

/// Jet pattern `ξ_{j1}^(1) ... ξ_{jn}^(1)` for the derivative multi-index `D`.
fn first_order_pattern(d: &MultiIndex) -> Vec<(usize, usize)> {
    (0..3)
        .flat_map(|j| std::iter::repeat_n((j, 1), d[j] as usize))
        .collect()
}

/// Assemble the system by applying the field with unknown coefficients to the
/// locus, reducing, and reading off the `z^{ρ-D}` slots.
pub fn lemma2_system(
    locus: &VerticalJetLocus,
    rho: &MultiIndex,
    slant: &SlantMatrix,
) -> Result<Lemma2System, FamilyError> {
    let f = &locus.family;
    check_rho(rho, f.d)?;
    let unknowns = indices_up_to(3);
    let slots = unknowns.clone();

    let mut field = slant.field(f);
    for beta in &unknowns {
        let alpha = checked_sub(rho, beta).expect("rho floor");
        let c = &f.poly(f.u[beta]) * &f.z_poly(beta);
        field.set_a(&alpha, c)?;
    }
    let residuals = field.reduced_residuals(locus)?;
    let ex = SlotExtractor::new(f);

    let n = unknowns.len();
    let mut matrix = RationalMatrix::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    let mut slot_polys = Vec::with_capacity(n);
    for (row, dmi) in slots.iter().enumerate() {
        let order = norm(dmi) as usize;
        let zexp = checked_sub(rho, dmi).expect("rho floor");
        let raw = ex.slot(&residuals[order], &first_order_pattern(dmi), &zexp);
        let p = raw.scale(&(int(1) / int(multinomial(dmi))));
        let (coeffs, rest) = ex.linear_parts(&p, &unknowns)?;
        for (col, c) in coeffs.into_iter().enumerate() {
            matrix.set(row, col, c);
        }
        rhs.push(-&rest);
        slot_polys.push(p);
    }

    let mut implied_polys = Vec::new();
    for j in 0..3 {
        let zj = checked_sub(rho, &unit(j)).expect("rho floor");
        implied_polys.push(ex.slot(&residuals[2], &[(j, 2)], &zj));
        implied_polys.push(ex.slot(&residuals[3], &[(j, 3)], &zj));
        for k in 0..3 {
            let zjk = checked_sub(&zj, &unit(k)).expect("rho floor");
            implied_polys.push(ex.slot(&residuals[3], &[(j, 2), (k, 1)], &zjk));
        }
    }

    Ok(Lemma2System {
        rho: *rho,
        d: f.d,
        unknowns,
        slots,
        matrix,
        rhs,
        slot_polys,
        implied_polys,
        family: f.clone(),
    })
}

/// Column `β` holds the order-≤3 partials of `z^{ρ-β}` at `z = (1,1,1)`, rows ordered like the system.
pub fn monomial_derivative_matrix(family: &Family, rho: &MultiIndex) -> RationalMatrix {
    let unknowns = indices_up_to(3);
    let n = unknowns.len();
    let zv = family.affine_z();
    let ones: HashMap<Var, Rational> = zv.iter().map(|&v| (v, int(1))).collect();
    let mut m = RationalMatrix::zeros(n, n);
    for (col, beta) in unknowns.iter().enumerate() {
        let mono = family.z_poly(&checked_sub(rho, beta).expect("rho floor"));
        for (row, dmi) in unknowns.iter().enumerate() {
            let mut p = mono.clone();
            for r in 0..3 {
                p = p.derivative(zv[r], dmi[r]).expect("in arena");
            }
            m.set(row, col, p.evaluate(&ones).as_constant().expect("numeric"));
        }
    }
    m
}

/// Closed form of [`monomial_derivative_matrix`]: falling factorials `(ρ-β)^{\underline D}`.
pub fn falling_factorial_matrix(rho: &MultiIndex) -> RationalMatrix {
    let unknowns = indices_up_to(3);
    let n = unknowns.len();
    let mut m = RationalMatrix::zeros(n, n);
    for (col, beta) in unknowns.iter().enumerate() {
        let alpha = checked_sub(rho, beta).expect("rho floor");
        for (row, dmi) in unknowns.iter().enumerate() {
            m.set(row, col, int(falling(&alpha, dmi)));
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct Lemma2Solution {
    pub system: Lemma2System,
    pub determinant: Rational,
    /// `v_β^{ρ-β}` keyed by `β`.
    pub solution: BTreeMap<MultiIndex, MultiPoly>,
    pub matrix_matches_monomial_derivatives: bool,
    pub slot_residuals_zero: bool,
    pub implied_slots_zero: bool,
    pub max_a_degree: u32,
}

impl Lemma2Solution {
    pub fn verified(&self) -> bool {
        self.matrix_matches_monomial_derivatives
            && self.slot_residuals_zero
            && self.implied_slots_zero
            && self.max_a_degree <= 1
    }

    /// `v_{ρ-β}` as polynomials in `z` and `a`.
    pub fn coefficient_polys(&self) -> BTreeMap<MultiIndex, MultiPoly> {
        let f = &self.system.family;
        self.solution
            .iter()
            .map(|(beta, x)| (checked_sub(&self.system.rho, beta).expect("floor"), x * &f.z_poly(beta)))
            .collect()
    }
}

/// Solve the system exactly and audit the solution.
pub fn lemma2_solve(
    locus: &VerticalJetLocus,
    rho: &MultiIndex,
    slant: &SlantMatrix,
) -> Result<Lemma2Solution, FamilyError> {
    let system = lemma2_system(locus, rho, slant)?;
    let f = &locus.family;
    let determinant = system.matrix.determinant()?;
    if num_traits::Zero::is_zero(&determinant) {
        return Err(FamilyError::Singular {
            rho: *rho,
            determinant,
        });
    }
    let x = solve_exact(&system.matrix, &system.rhs)?;
    let bindings: HashMap<Var, MultiPoly> = system
        .unknowns
        .iter()
        .zip(&x)
        .map(|(beta, xi)| (f.u[beta], xi.clone()))
        .collect();
    let vanish = |ps: &[MultiPoly]| -> Result<bool, FamilyError> {
        for p in ps {
            if !p.substitute(&bindings)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let slot_residuals_zero = vanish(&system.slot_polys)?;
    let implied_slots_zero = vanish(&system.implied_polys)?;
    let a_vars = f.a_vars();
    let max_a_degree = x.iter().map(|p| p.degree_in(&a_vars)).max().unwrap_or(0);
    let matrix_matches_monomial_derivatives =
        system.matrix == monomial_derivative_matrix(f, rho);
    let solution = system.unknowns.iter().copied().zip(x).collect();
    Ok(Lemma2Solution {
        system,
        determinant,
        solution,
        matrix_matches_monomial_derivatives,
        slot_residuals_zero,
        implied_slots_zero,
        max_a_degree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma2Outcome {
    pub rho: MultiIndex,
    pub d: u32,
    pub determinant: String,
    pub matrix_matches_monomial_derivatives: bool,
    pub slot_residuals_zero: bool,
    pub implied_slots_zero: bool,
    pub max_a_degree: u32,
    pub verified: bool,
}

/// Solve at `ρ` with `d = |ρ| + 3` and a seeded rational slant matrix.
pub fn lemma2_check(rho: &MultiIndex, seed: u64) -> Result<Lemma2Outcome, FamilyError> {
    check_rho(rho, lemma2_min_degree(rho))?;
    let locus = VerticalJetLocus::for_degree(lemma2_min_degree(rho))?;
    let slant = SlantMatrix::seeded(&locus.family, seed);
    let s = lemma2_solve(&locus, rho, &slant)?;
    Ok(Lemma2Outcome {
        rho: *rho,
        d: s.system.d,
        determinant: format_rational(&s.determinant),
        matrix_matches_monomial_derivatives: s.matrix_matches_monomial_derivatives,
        slot_residuals_zero: s.slot_residuals_zero,
        implied_slots_zero: s.implied_slots_zero,
        max_a_degree: s.max_a_degree,
        verified: s.verified(),
    })
}

/// The 27 indices `4 ≤ ρ_i ≤ 6`.
pub fn lemma2_sweep_indices() -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for a in 4..=6 {
        for b in 4..=6 {
            for c in 4..=6 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// [`lemma2_check`] over every index of [`lemma2_sweep_indices`], in parallel.
pub fn lemma2_sweep(seed: u64) -> Result<Vec<Lemma2Outcome>, FamilyError> {
    use rayon::prelude::*;
    lemma2_sweep_indices()
        .par_iter()
        .enumerate()
        .map(|(i, rho)| lemma2_check(rho, seed.wrapping_add(i as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_derivatives() {
        let f = Family::for_degree(15).unwrap();
        for rho in [[4, 4, 4], [5, 4, 4], [6, 5, 4]] {
            assert_eq!(monomial_derivative_matrix(&f, &rho), falling_factorial_matrix(&rho));
        }
    }

    #[test]
    fn shape_and_first_order_row() {
        let locus = VerticalJetLocus::for_degree(15).unwrap();
        let slant = SlantMatrix::seeded(&locus.family, 1);
        let s = lemma2_system(&locus, &[4, 4, 4], &slant).unwrap();
        assert_eq!(s.unknowns.len(), 20);
        assert_eq!(s.slots.len(), 20);
        let row = s.slots.iter().position(|d| *d == [1, 0, 0]).unwrap();
        for (col, beta) in s.unknowns.iter().enumerate() {
            assert_eq!(*s.matrix.get(row, col), int(4 - beta[0] as i64));
        }
    }

    #[test]
    fn zero_slant_gives_zero_solution() {
        let locus = VerticalJetLocus::for_degree(15).unwrap();
        let s = lemma2_solve(&locus, &[4, 4, 4], &SlantMatrix::zero(&locus.family)).unwrap();
        assert!(s.solution.values().all(MultiPoly::is_zero));
        assert!(s.verified());
    }

    #[test]
    fn seeded_solve_at_544() {
        let out = lemma2_check(&[5, 4, 4], 3).unwrap();
        assert!(out.verified, "{out:?}");
        assert_ne!(out.determinant, "0");
    }

    #[test]
    fn symbolic_slant_matrix() {
        let locus = VerticalJetLocus::for_degree(15).unwrap();
        let slant = SlantMatrix::symbolic(&locus.family);
        let s = lemma2_solve(&locus, &[4, 4, 4], &slant).unwrap();
        assert!(s.verified());
        assert!(s.solution.values().any(|p| !p.is_zero()));
    }

    #[test]
    fn floors_are_enforced() {
        let locus = VerticalJetLocus::for_degree(15).unwrap();
        let slant = SlantMatrix::zero(&locus.family);
        assert!(matches!(
            lemma2_system(&locus, &[3, 4, 4], &slant),
            Err(FamilyError::RhoFloor(_))
        ));
        assert!(matches!(
            lemma2_system(&locus, &[5, 4, 4], &slant),
            Err(FamilyError::DegreeTooSmall { .. })
        ));
    }
}
