use std::sync::Arc;

use serde::Serialize;

use super::index::{add, unit};
use super::{Family, FamilyError, VectorField, VerticalJetLocus};
use crate::algebra::{int, MultiPoly};

/// `Σ v_ρ(a) ∂/∂a_ρ + Σ_{j≤3} v_j ∂/∂z_j + v4 z4 ∂/∂z4` with
/// `v_ρ = d v4 a_ρ - Σ_{j≤3} (ρ_j + 1) a_{ρ+δ_j} v_j`.
///
/// `v` may be rational constants or symbols; `a_{ρ+δ_j}` is dropped when
/// `ρ + δ_j` leaves the index set.
pub fn lemma1_field(family: &Arc<Family>, v: &[MultiPoly; 4]) -> Result<VectorField, FamilyError> {
    let f = family;
    let d = int(f.d as i64);
    let mut field = VectorField::zero(f.clone());
    for (rho, &a) in &f.a {
        let mut c = (&v[3] * &f.poly(a)).scale(&d);
        for (j, vj) in v.iter().enumerate().take(3) {
            if let Some(next) = f.a_poly(&add(rho, &unit(j))) {
                c = &c - &(&next * vj).scale(&int(rho[j] as i64 + 1));
            }
        }
        field.set(a, c);
    }
    for (j, vj) in v.iter().enumerate().take(3) {
        field.set(f.z[j], vj.clone());
    }
    field.set(f.z[3], &v[3] * &f.poly(f.z[3]));
    Ok(field)
}

/// The field with the symbols `v1..v4` as parameters.
pub fn lemma1_symbolic(family: &Arc<Family>) -> Result<VectorField, FamilyError> {
    let v = family.v.map(|s| family.poly(s));
    lemma1_field(family, &v)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Outcome {
    pub d: u32,
    pub verified: bool,
    pub max_a_degree: u32,
    pub witness: Option<(usize, String)>,
}

/// Symbolic tangency and the a-degree bound at degree `d`.
pub fn lemma1_check(d: u32) -> Result<Lemma1Outcome, FamilyError> {
    let locus = VerticalJetLocus::for_degree(d)?;
    let field = lemma1_symbolic(&locus.family)?;
    let witness = super::check_tangency(&locus, &field)?;
    let max_a_degree = field.max_a_degree();
    Ok(Lemma1Outcome {
        d,
        verified: witness.is_none() && max_a_degree <= 1,
        max_a_degree,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn constants(f: &Family, v: [i64; 4]) -> [MultiPoly; 4] {
        v.map(|x| MultiPoly::constant(&f.arena, int(x)))
    }

    #[test]
    fn zero_parameters_give_zero_field() {
        let f = Family::for_degree(3).unwrap();
        assert!(lemma1_field(&f, &constants(&f, [0; 4])).unwrap().is_zero());
    }

    #[test]
    fn unit_parameters() {
        let f = Family::for_degree(3).unwrap();
        let v = lemma1_field(&f, &constants(&f, [1, 0, 0, 0])).unwrap();
        for (rho, c) in v.a_components() {
            let expected = f
                .a_poly(&add(&rho, &unit(0)))
                .map(|a| a.scale(&int(-(rho[0] as i64 + 1))))
                .unwrap_or_else(|| MultiPoly::zero(&f.arena));
            assert_eq!(c, expected);
        }
        let w = lemma1_field(&f, &constants(&f, [0, 0, 0, 1])).unwrap();
        for (rho, c) in w.a_components() {
            assert_eq!(c, f.a_poly(&rho).unwrap().scale(&int(3)));
        }
    }

    #[test]
    fn symbolic_tangency_small_degrees() {
        for d in 2..=4 {
            let out = lemma1_check(d).unwrap();
            assert!(out.verified, "{out:?}");
            assert_eq!(out.max_a_degree, 1);
        }
    }

    #[test]
    fn first_condition_reduces_to_the_expected_identity() {
        // Arbitrary a-components: the reduced first condition is
        // Σ v_α z^α + Σ_j v_j ∂_j S - d v4 S with S = Σ a_α z^α.
        let locus = VerticalJetLocus::for_degree(3).unwrap();
        let f = locus.family.clone();
        let vs = f.v.map(|s| f.poly(s));
        let mut field = VectorField::zero(f.clone());
        for j in 0..3 {
            field.set(f.z[j], vs[j].clone());
        }
        field.set(f.z[3], &vs[3] * &f.poly(f.z[3]));
        let mut va = MultiPoly::zero(&f.arena);
        for (k, alpha) in [[0, 1, 1], [2, 0, 0], [0, 0, 0]].iter().enumerate() {
            let c = f.poly(f.a[&[1, 0, 0]]).scale(&rat(k as i64 + 1, 2));
            field.set_a(alpha, c.clone()).unwrap();
            va = &va + &(&c * &f.z_poly(alpha));
        }
        let reduced = locus.reduce(&field.tangency_conditions(&locus).unwrap()[0]);
        let s = &locus.tails[0];
        let mut expected = &va - &(&vs[3] * s).scale(&int(3));
        for j in 0..3 {
            expected = &expected + &(&vs[j] * &s.derivative(f.z[j], 1).unwrap());
        }
        assert_eq!(reduced, expected);
    }
}
