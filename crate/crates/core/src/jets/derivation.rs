use std::collections::HashMap;

use super::{JetCoordinates, JetError, JetStyle};
use crate::algebra::{MultiPoly, Rational, Var};

/// Arena variables carrying a point `z_j` and its standard jet `ξ̂_j^(i)`.
///
/// `jet[j][i-1]` is the variable for `ξ̂_j^(i)`.
#[derive(Clone, Debug)]
pub struct JetSymbols {
    pub z: Vec<Var>,
    pub jet: Vec<[Var; 3]>,
}

impl JetSymbols {
    /// Image under the total derivative, `None` for `ξ̂^(3)` (no order-4 symbol).
    fn image(&self, v: Var) -> Option<Option<usize>> {
        if let Some(j) = self.z.iter().position(|&z| z == v) {
            return Some(Some(j * 3));
        }
        for (j, block) in self.jet.iter().enumerate() {
            if let Some(i) = block.iter().position(|&x| x == v) {
                return Some((i < 2).then_some(j * 3 + i + 1));
            }
        }
        None
    }

    fn flat(&self, k: usize) -> Var {
        self.jet[k / 3][k % 3]
    }
}

/// One application of `d/dt` along the jet: `z_j ↦ ξ̂_j^(1)`, `ξ̂_j^(i) ↦ ξ̂_j^(i+1)`.
///
/// Variables outside `symbols` are constants.
pub fn total_derivative(p: &MultiPoly, symbols: &JetSymbols) -> Result<MultiPoly, JetError> {
    let arena = p.arena();
    let mut out = MultiPoly::zero(arena);
    for (v, partial) in p.gradient() {
        match symbols.image(v) {
            None => {}
            Some(None) => return Err(JetError::OrderOutOfRange(4)),
            Some(Some(k)) => out.add_assign_ref(&(&partial * &MultiPoly::var(arena, symbols.flat(k)))),
        }
    }
    Ok(out)
}

/// `d^order/dt^order p(z(t))` at `t = 0` in terms of `z` and the standard jet.
///
/// Expands to the Faà di Bruno form, e.g. at order 3
/// `Σ ∂_j p ξ̂_j''' + 3 Σ ∂_j∂_k p ξ̂_j'' ξ̂_k' + Σ ∂_j∂_k∂_l p ξ̂_j' ξ̂_k' ξ̂_l'`.
pub fn derivative_along_jet(
    p: &MultiPoly,
    order: u32,
    symbols: &JetSymbols,
) -> Result<MultiPoly, JetError> {
    if !(1..=3).contains(&order) {
        return Err(JetError::OrderOutOfRange(order));
    }
    let mut q = p.clone();
    for _ in 0..order {
        q = total_derivative(&q, symbols)?;
    }
    Ok(q)
}

/// [`derivative_along_jet`] evaluated at a numeric standard jet.
pub fn derivative_along_jet_at(
    p: &MultiPoly,
    order: u32,
    symbols: &JetSymbols,
    jet: &JetCoordinates,
) -> Result<Rational, JetError> {
    if jet.style != JetStyle::Standard {
        return Err(JetError::WrongStyle { expected: "standard" });
    }
    if jet.basepoint.len() != symbols.z.len() {
        return Err(JetError::DimensionMismatch {
            expected: symbols.z.len(),
            got: jet.basepoint.len(),
        });
    }
    let q = derivative_along_jet(p, order, symbols)?;
    let mut values: HashMap<Var, Rational> = HashMap::new();
    for (j, &z) in symbols.z.iter().enumerate() {
        values.insert(z, jet.basepoint[j].clone());
        for i in 0..3 {
            values.insert(symbols.jet[j][i], jet.values[j][i].clone());
        }
    }
    let value = q.evaluate(&values);
    value
        .as_constant()
        .ok_or_else(|| JetError::NonNumeric(value.to_string()))
}
