use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use super::index::{checked_sub, indices_up_to, MultiIndex};
use super::{Family, FamilyError, VectorField, VerticalJetLocus};
use crate::algebra::{int, MultiPoly};

/// Exponent pattern of a first-package field: `(1-u1)^k1 (1-u2)^k2 (1-u3)^k3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pattern {
    #[serde(rename = "400")]
    P400,
    #[serde(rename = "310")]
    P310,
    #[serde(rename = "220")]
    P220,
    #[serde(rename = "211")]
    P211,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::P400, Pattern::P310, Pattern::P220, Pattern::P211];

    pub fn exponents(self) -> [u32; 3] {
        match self {
            Pattern::P400 => [4, 0, 0],
            Pattern::P310 => [3, 1, 0],
            Pattern::P220 => [2, 2, 0],
            Pattern::P211 => [2, 1, 1],
        }
    }

    /// Shifts `β` (in role coordinates) and coefficients `∏ (-1)^β_r C(k_r, β_r)`.
    pub fn generator(self) -> Vec<(MultiIndex, i64)> {
        let k = self.exponents();
        let mut out = Vec::new();
        for b0 in 0..=k[0] {
            for b1 in 0..=k[1] {
                for b2 in 0..=k[2] {
                    let beta = [b0, b1, b2];
                    let c: i64 = (0..3)
                        .map(|r| {
                            let sign = if beta[r] % 2 == 0 { 1 } else { -1 };
                            sign * binomial(k[r] as i64, beta[r] as i64)
                        })
                        .product();
                    out.push((beta, c));
                }
            }
        }
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.exponents();
        write!(f, "{}{}{}", k[0], k[1], k[2])
    }
}

impl FromStr for Pattern {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| FamilyError::UnknownPattern(s.to_string()))
    }
}

/// Role-to-coordinate map: role `r` of the pattern acts on `z_{σ[r]+1}`.
pub type Permutation = [usize; 3];

const PERMUTATIONS: [Permutation; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Exponent floor of the pattern after permuting: `floor[σ[r]] = k_r`.
pub fn floor(exponents: [u32; 3], perm: &Permutation) -> MultiIndex {
    let mut f = [0; 3];
    for r in 0..3 {
        f[perm[r]] = exponents[r];
    }
    f
}

/// One permutation per distinct permuted pattern, lexicographically first.
pub fn arrangements(pattern: Pattern) -> Vec<Permutation> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for perm in PERMUTATIONS {
        let f = floor(pattern.exponents(), &perm);
        if !seen.contains(&f) {
            seen.push(f);
            out.push(perm);
        }
    }
    out
}

/// All `α` with `|α| ≤ d` meeting the permuted floor.
pub fn admissible_alphas(d: u32, pattern: Pattern, perm: &Permutation) -> Vec<MultiIndex> {
    let f = floor(pattern.exponents(), perm);
    indices_up_to(d)
        .into_iter()
        .filter(|a| checked_sub(a, &f).is_some())
        .collect()
}

fn field_from_generator(
    family: &Arc<Family>,
    generator: &[(MultiIndex, i64)],
    floor_exponents: [u32; 3],
    label: &str,
    alpha: &MultiIndex,
    perm: &Permutation,
) -> Result<VectorField, FamilyError> {
    let fl = floor(floor_exponents, perm);
    if checked_sub(alpha, &fl).is_none() {
        return Err(FamilyError::PatternFloor {
            pattern: label.to_string(),
            alpha: *alpha,
            floor: fl,
        });
    }
    family.a_var(alpha)?;
    let mut v = VectorField::zero(family.clone());
    for (beta, c) in generator {
        let shift = floor(*beta, perm);
        let target = checked_sub(alpha, &shift).expect("within floor");
        let coef = MultiPoly::term(&family.arena, family.z_monomial(&shift), int(*c));
        v.set_a(&target, coef)?;
    }
    Ok(v)
}

/// `Σ_β c_β z^β ∂/∂a_{α-β}` for the pattern's generator, permuted by `perm`.
pub fn package1_field(
    family: &Arc<Family>,
    pattern: Pattern,
    alpha: &MultiIndex,
    perm: &Permutation,
) -> Result<VectorField, FamilyError> {
    field_from_generator(
        family,
        &pattern.generator(),
        pattern.exponents(),
        &pattern.to_string(),
        alpha,
        perm,
    )
}

/// The six-term variant of the 220 field, with generator `(1-u1)(1-u2)(1-u1 u2)`.
pub fn six_term_220_field(
    family: &Arc<Family>,
    alpha: &MultiIndex,
    perm: &Permutation,
) -> Result<VectorField, FamilyError> {
    let generator = [
        ([0, 0, 0], 1),
        ([0, 1, 0], -1),
        ([1, 0, 0], -1),
        ([1, 2, 0], 1),
        ([2, 1, 0], 1),
        ([2, 2, 0], -1),
    ];
    field_from_generator(family, &generator, [2, 2, 0], "220 (six-term)", alpha, perm)
}

/// Outcome of one tangency check.
#[derive(Clone, Debug, Serialize)]
pub struct TangencyOutcome {
    pub d: u32,
    pub pattern: String,
    pub alpha: MultiIndex,
    pub permutation: Permutation,
    pub verified: bool,
    /// First nonzero reduced residual as `(equation index, polynomial)`.
    pub witness: Option<(usize, String)>,
}

pub fn check_tangency(locus: &VerticalJetLocus, field: &VectorField) -> Result<Option<(usize, String)>, FamilyError> {
    let residuals = field.reduced_residuals(locus)?;
    Ok(residuals
        .iter()
        .enumerate()
        .find(|(_, r)| !r.is_zero())
        .map(|(k, r)| (k, r.to_string())))
}

/// Every pattern, admissible `α` and distinct permutation at degree `d`.
pub fn tangency_sweep(d: u32, patterns: &[Pattern]) -> Result<Vec<TangencyOutcome>, FamilyError> {
    let locus = VerticalJetLocus::for_degree(d)?;
    let mut cases = Vec::new();
    for &pattern in patterns {
        for perm in arrangements(pattern) {
            for alpha in admissible_alphas(d, pattern, &perm) {
                cases.push((pattern, perm, alpha));
            }
        }
    }
    cases
        .par_iter()
        .map(|(pattern, perm, alpha)| {
            let field = package1_field(&locus.family, *pattern, alpha, perm)?;
            let witness = check_tangency(&locus, &field)?;
            Ok(TangencyOutcome {
                d,
                pattern: pattern.to_string(),
                alpha: *alpha,
                permutation: *perm,
                verified: witness.is_none(),
                witness,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v400_coefficients() {
        let f = Family::for_degree(4).unwrap();
        let v = package1_field(&f, Pattern::P400, &[4, 0, 0], &[0, 1, 2]).unwrap();
        let a = v.a_components();
        let z1 = f.poly(f.z[0]);
        assert_eq!(a[&[4, 0, 0]], MultiPoly::one(&f.arena));
        assert_eq!(a[&[3, 0, 0]], z1.scale(&int(-4)));
        assert_eq!(a[&[2, 0, 0]], z1.pow(2).scale(&int(6)));
        assert_eq!(a[&[1, 0, 0]], z1.pow(3).scale(&int(-4)));
        assert_eq!(a[&[0, 0, 0]], z1.pow(4));
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn term_counts_and_sample_coefficients() {
        let f = Family::for_degree(5).unwrap();
        assert_eq!(package1_field(&f, Pattern::P310, &[3, 1, 0], &[0, 1, 2]).unwrap().components.len(), 8);
        let v = package1_field(&f, Pattern::P211, &[2, 1, 1], &[0, 1, 2]).unwrap();
        assert_eq!(v.components.len(), 12);
        let z = |j: usize| f.poly(f.z[j]);
        assert_eq!(v.a_components()[&[1, 0, 0]], (&(&z(0) * &z(1)) * &z(2)).scale(&int(-2)));
        let p = six_term_220_field(&f, &[2, 2, 0], &[0, 1, 2]).unwrap();
        assert_eq!(p.a_components()[&[1, 0, 0]], &z(0) * &z(1).pow(2));
    }

    #[test]
    fn floor_violation_is_error() {
        let f = Family::for_degree(5).unwrap();
        assert!(matches!(
            package1_field(&f, Pattern::P400, &[3, 1, 0], &[0, 1, 2]),
            Err(FamilyError::PatternFloor { .. })
        ));
    }

    #[test]
    fn arrangement_counts() {
        let counts: Vec<usize> = Pattern::ALL.iter().map(|&p| arrangements(p).len()).collect();
        assert_eq!(counts, vec![3, 6, 3, 3]);
    }

    #[test]
    fn order_zero_identity() {
        let f = Family::for_degree(6).unwrap();
        for pattern in Pattern::ALL {
            for perm in arrangements(pattern) {
                for alpha in admissible_alphas(6, pattern, &perm) {
                    let v = package1_field(&f, pattern, &alpha, &perm).unwrap();
                    let mut sum = MultiPoly::zero(&f.arena);
                    for (a, c) in v.a_components() {
                        sum = &sum + &(&c * &f.z_poly(&a));
                    }
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn sweep_at_degree_five() {
        let out = tangency_sweep(5, &Pattern::ALL).unwrap();
        assert!(!out.is_empty());
        assert!(out.iter().all(|o| o.verified), "{:?}", out.iter().find(|o| !o.verified));
    }

    #[test]
    fn six_term_220_fails_only_the_third_order_condition() {
        let locus = VerticalJetLocus::for_degree(4).unwrap();
        let v = six_term_220_field(&locus.family, &[2, 2, 0], &[0, 1, 2]).unwrap();
        let r = v.reduced_residuals(&locus).unwrap();
        assert!(r[0].is_zero() && r[1].is_zero() && r[2].is_zero());
        assert!(!r[3].is_zero());
    }
}
