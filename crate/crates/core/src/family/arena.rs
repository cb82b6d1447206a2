use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::index::{indices_up_to, label, MultiIndex};
use super::FamilyError;
use crate::algebra::{Arena, ArenaBuilder, Monomial, MultiPoly, Var};
use crate::jets::JetSymbols;

/// Variables of the affine chart for the degree-`d` universal surface and its vertical 3-jets.
///
/// * `z1..z4`: point coordinates, `z4` is the logarithmic one.
/// * `a_i_j_k`: coefficient of `z1^i z2^j z3^k`, one per `α` with `|α| ≤ d`.
/// * `xi{j}_{i}`: jet coordinate `ξ_j^(i)`; standard for `j ≤ 3`, logarithmic for `j = 4`.
/// * `xh4_{i}`: standard jet coordinate `ξ̂_4^(i)`, used only while building the locus.
/// * `v1..v4`, `A{j}_{i}`, `u_β`, `t_α`: symbols for field parameters.
#[derive(Debug)]
pub struct Family {
    pub d: u32,
    pub arena: Arena,
    pub z: [Var; 4],
    /// `xi[j][i-1]` is `ξ_{j+1}^(i)`.
    pub xi: [[Var; 3]; 4],
    pub xh4: [Var; 3],
    pub a: BTreeMap<MultiIndex, Var>,
    pub v: [Var; 4],
    /// `slant[j][i]` is the symbol for `A_{j+1}^{i+1}`.
    pub slant: [[Var; 3]; 4],
    /// Slanted-system unknowns, one per `|β| ≤ 3`.
    pub u: BTreeMap<MultiIndex, Var>,
    /// Wronskian-system tail symbols, one per `|α| ≤ 3` other than the four unknown slots.
    pub t: BTreeMap<MultiIndex, Var>,
}

/// The four low-order slots solved for in the Wronskian system.
pub const PROP1_UNKNOWNS: [MultiIndex; 4] = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

impl Family {
    pub fn new(d: u32) -> Result<Self, FamilyError> {
        if d == 0 {
            return Err(FamilyError::InvalidDegree(d));
        }
        let mut b = ArenaBuilder::default();
        let z = [1, 2, 3, 4].map(|j| b.push(format!("z{j}")).expect("fresh"));
        let xi = [1, 2, 3, 4].map(|j| [1, 2, 3].map(|i| b.push(format!("xi{j}_{i}")).expect("fresh")));
        let xh4 = [1, 2, 3].map(|i| b.push(format!("xh4_{i}")).expect("fresh"));
        let mut a = BTreeMap::new();
        for alpha in indices_up_to(d) {
            let name = format!("a_{}_{}_{}", alpha[0], alpha[1], alpha[2]);
            a.insert(alpha, b.push(name)?);
        }
        let v = [1, 2, 3, 4].map(|j| b.push(format!("v{j}")).expect("fresh"));
        let slant = [1, 2, 3, 4].map(|j| [1, 2, 3].map(|i| b.push(format!("A{j}_{i}")).expect("fresh")));
        let mut u = BTreeMap::new();
        let mut t = BTreeMap::new();
        for beta in indices_up_to(3) {
            u.insert(beta, b.push(format!("u_{}", label(&beta)))?);
            if !PROP1_UNKNOWNS.contains(&beta) {
                t.insert(beta, b.push(format!("t_{}", label(&beta)))?);
            }
        }
        Ok(Family {
            d,
            arena: b.finish(),
            z,
            xi,
            xh4,
            a,
            v,
            slant,
            u,
            t,
        })
    }

    /// Shared instance per degree.
    pub fn for_degree(d: u32) -> Result<Arc<Family>, FamilyError> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<OnceLock<Arc<Family>>>>>> = OnceLock::new();
        if d == 0 {
            return Err(FamilyError::InvalidDegree(d));
        }
        let cell = CACHE
            .get_or_init(Default::default)
            .lock()
            .expect("cache lock")
            .entry(d)
            .or_default()
            .clone();
        Ok(cell
            .get_or_init(|| Arc::new(Family::new(d).expect("valid degree")))
            .clone())
    }

    pub fn poly(&self, v: Var) -> MultiPoly {
        MultiPoly::var(&self.arena, v)
    }

    pub fn a_var(&self, alpha: &MultiIndex) -> Result<Var, FamilyError> {
        self.a.get(alpha).copied().ok_or(FamilyError::IndexOutOfRange {
            alpha: *alpha,
            d: self.d,
        })
    }

    pub fn a_poly(&self, alpha: &MultiIndex) -> Option<MultiPoly> {
        self.a.get(alpha).map(|&v| self.poly(v))
    }

    /// `z^α` in `z1, z2, z3`.
    pub fn z_monomial(&self, alpha: &MultiIndex) -> Monomial {
        Monomial::from_pairs((0..3).map(|r| (self.z[r], alpha[r])))
    }

    pub fn z_poly(&self, alpha: &MultiIndex) -> MultiPoly {
        MultiPoly::term(&self.arena, self.z_monomial(alpha), crate::algebra::int(1))
    }

    /// `z1..z3` as a slice.
    pub fn affine_z(&self) -> [Var; 3] {
        [self.z[0], self.z[1], self.z[2]]
    }

    /// `ξ_j^(i)` for `j ≤ 3`.
    pub fn affine_xi(&self) -> Vec<Var> {
        self.xi[..3].iter().flatten().copied().collect()
    }

    pub fn a_vars(&self) -> Vec<Var> {
        self.a.values().copied().collect()
    }

    /// Standard-jet symbols over all four coordinates, with `ξ̂_4` for the last one.
    pub fn standard_symbols(&self) -> JetSymbols {
        JetSymbols {
            z: self.z.to_vec(),
            jet: vec![self.xi[0], self.xi[1], self.xi[2], self.xh4],
        }
    }

    /// Standard-jet symbols over `z1..z3` only.
    pub fn affine_symbols(&self) -> JetSymbols {
        JetSymbols {
            z: self.affine_z().to_vec(),
            jet: vec![self.xi[0], self.xi[1], self.xi[2]],
        }
    }

    /// `ξ^(i)` order of a jet variable (1..=3) if it is one of `ξ_j^(i)`, `j ≤ 3`.
    pub fn jet_order(&self, v: Var) -> Option<u32> {
        self.xi[..3]
            .iter()
            .find_map(|block| block.iter().position(|&x| x == v).map(|i| i as u32 + 1))
    }

    pub fn is_affine_z(&self, v: Var) -> bool {
        self.z[..3].contains(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_size() {
        for d in 1..=6u32 {
            let f = Family::new(d).unwrap();
            let expected = (d + 1) * (d + 2) * (d + 3) / 6;
            assert_eq!(f.a.len() as u32, expected);
        }
        assert_eq!(Family::new(4).unwrap().u.len(), 20);
        assert_eq!(Family::new(4).unwrap().t.len(), 16);
        assert!(Family::new(0).is_err());
    }

    #[test]
    fn cache_returns_shared_instance() {
        let a = Family::for_degree(3).unwrap();
        let b = Family::for_degree(3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
