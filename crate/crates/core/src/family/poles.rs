use serde::Serialize;

use super::{Family, VectorField};
use crate::algebra::{int, Monomial, MultiPoly, Var};

/// Pole contribution of one variable at the hyperplane at infinity:
/// 1 for each `z_j`, `i + 1` for each `ξ_j^(i)`, 0 for parameters.
pub fn pole_weight(family: &Family, v: Var) -> u32 {
    if family.z.contains(&v) {
        return 1;
    }
    family
        .xi
        .iter()
        .find_map(|block| block.iter().position(|&x| x == v).map(|i| i as u32 + 2))
        .unwrap_or(0)
}

pub fn monomial_pole_order(family: &Family, m: &Monomial) -> u32 {
    m.factors().map(|(v, e)| pole_weight(family, v) * e).sum()
}

/// Largest pole order over the monomials of `p`; 0 for the zero polynomial.
pub fn poly_pole_order(family: &Family, p: &MultiPoly) -> u32 {
    p.max_weight(|v| pole_weight(family, v))
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleAudit {
    pub order: u32,
    /// Component name and monomial attaining the order.
    pub worst: Option<(String, String)>,
}

/// Pole order of a field: the maximum over its component coefficients.
///
/// Polynomial fields carry no denominator, so nothing is credited back.
pub fn pole_order_audit(field: &VectorField) -> PoleAudit {
    let f = &field.family;
    let mut best = PoleAudit { order: 0, worst: None };
    for (&v, c) in &field.components {
        for (m, _) in c.terms() {
            let w = monomial_pole_order(f, m);
            if best.worst.is_none() || w > best.order {
                best = PoleAudit {
                    order: w,
                    worst: Some((
                        f.arena.name(v).to_string(),
                        MultiPoly::term(&f.arena, m.clone(), int(1)).to_string(),
                    )),
                };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{arrangements, package1_field, Pattern};

    #[test]
    fn weights() {
        let f = Family::for_degree(4).unwrap();
        assert_eq!(pole_weight(&f, f.z[0]), 1);
        assert_eq!(pole_weight(&f, f.xi[1][0]), 2);
        assert_eq!(pole_weight(&f, f.xi[2][2]), 4);
        assert_eq!(pole_weight(&f, f.a[&[0, 0, 0]]), 0);
    }

    #[test]
    fn v400_scores_four() {
        let f = Family::for_degree(4).unwrap();
        let v = package1_field(&f, Pattern::P400, &[4, 0, 0], &[0, 1, 2]).unwrap();
        let audit = pole_order_audit(&v);
        assert_eq!(audit.order, 4);
        assert_eq!(audit.worst.unwrap().1, "z1^4");
    }

    #[test]
    fn constant_field_scores_zero() {
        let f = Family::for_degree(4).unwrap();
        let mut v = VectorField::zero(f.clone());
        v.set_a(&[1, 2, 0], MultiPoly::one(&f.arena)).unwrap();
        assert_eq!(pole_order_audit(&v).order, 0);
    }

    #[test]
    fn every_package1_field_scores_four() {
        let f = Family::for_degree(6).unwrap();
        for pattern in Pattern::ALL {
            for perm in arrangements(pattern) {
                for alpha in crate::family::admissible_alphas(6, pattern, &perm) {
                    let v = package1_field(&f, pattern, &alpha, &perm).unwrap();
                    assert_eq!(pole_order_audit(&v).order, 4);
                }
            }
        }
    }
}
