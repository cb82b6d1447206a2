use std::collections::BTreeMap;
use std::sync::Arc;

use super::index::MultiIndex;
use super::{Family, FamilyError, VerticalJetLocus};
use crate::algebra::{MultiPoly, Var};

/// A derivation `Σ c_v ∂/∂v` on the family arena.
///
/// Components are keyed by variable; the `z4` component stores the genuine
/// `∂/∂z4` coefficient (so a field with `v4 z4 ∂/∂z4` stores `v4·z4`).
#[derive(Clone, Debug)]
pub struct VectorField {
    pub family: Arc<Family>,
    pub components: BTreeMap<Var, MultiPoly>,
}

impl VectorField {
    pub fn zero(family: Arc<Family>) -> Self {
        VectorField {
            family,
            components: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, v: Var, c: MultiPoly) {
        if c.is_zero() {
            self.components.remove(&v);
        } else {
            self.components.insert(v, c);
        }
    }

    pub fn add_to(&mut self, v: Var, c: &MultiPoly) {
        let sum = match self.components.get(&v) {
            Some(old) => old + c,
            None => c.clone(),
        };
        self.set(v, sum);
    }

    pub fn set_a(&mut self, alpha: &MultiIndex, c: MultiPoly) -> Result<(), FamilyError> {
        let v = self.family.a_var(alpha)?;
        self.set(v, c);
        Ok(())
    }

    pub fn component(&self, v: Var) -> MultiPoly {
        self.components
            .get(&v)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.family.arena))
    }

    /// Coefficients of `∂/∂a_α`, keyed by `α`.
    pub fn a_components(&self) -> BTreeMap<MultiIndex, MultiPoly> {
        self.family
            .a
            .iter()
            .filter_map(|(alpha, v)| self.components.get(v).map(|c| (*alpha, c.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `V(p) = Σ c_v ∂p/∂v`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly, FamilyError> {
        let mut out = MultiPoly::zero(&self.family.arena);
        for (&v, c) in &self.components {
            let dp = p.derivative(v, 1)?;
            if !dp.is_zero() {
                out.add_assign_ref(&c.checked_mul(&dp)?);
            }
        }
        Ok(out)
    }

    fn apply_with_gradient(
        &self,
        gradient: &std::collections::HashMap<Var, MultiPoly>,
    ) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.family.arena);
        for (v, c) in &self.components {
            if let Some(dp) = gradient.get(v) {
                out.add_assign_ref(&(c * dp));
            }
        }
        out
    }

    /// `V` applied to the four locus equations, unreduced.
    pub fn tangency_conditions(&self, locus: &VerticalJetLocus) -> Result<[MultiPoly; 4], FamilyError> {
        if !Arc::ptr_eq(&self.family, &locus.family) {
            return Err(crate::algebra::AlgebraError::ArenaMismatch.into());
        }
        Ok(std::array::from_fn(|k| self.apply_with_gradient(locus.gradient(k))))
    }

    /// Tangency conditions reduced modulo the locus.
    pub fn reduced_residuals(&self, locus: &VerticalJetLocus) -> Result<[MultiPoly; 4], FamilyError> {
        Ok(self.tangency_conditions(locus)?.map(|r| locus.reduce(&r)))
    }

    /// Highest degree in the `a` variables over the `∂/∂a` components.
    pub fn max_a_degree(&self) -> u32 {
        let a_vars = self.family.a_vars();
        self.a_components()
            .values()
            .map(|c| c.degree_in(&a_vars))
            .max()
            .unwrap_or(0)
    }
}
