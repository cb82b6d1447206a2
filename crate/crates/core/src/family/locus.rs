use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Family, FamilyError};
use crate::algebra::{int, Monomial, MultiPoly, Rational, Var};
use crate::jets::derivative_along_jet;

/// The four defining equations of the vertical logarithmic 3-jet locus.
///
/// `eqs[0] = z4^d + Σ a_α z^α` and `eqs[k]` is its `k`-th derivative along a
/// vertical jet, with the `z4` jet written in logarithmic coordinates.
#[derive(Debug)]
pub struct VerticalJetLocus {
    pub family: Arc<Family>,
    pub eqs: [MultiPoly; 4],
    /// `z4`-free part of each equation.
    pub tails: [MultiPoly; 4],
    /// First partials of each equation.
    gradients: [HashMap<Var, MultiPoly>; 4],
    /// `rules[k]` replaces the leading monomial `z4^d ξ_4^(k)` (`z4^d` for `k = 0`).
    rules: [MultiPoly; 4],
}

impl VerticalJetLocus {
    pub fn build(family: Arc<Family>) -> Result<Self, FamilyError> {
        let f = &family;
        let arena = &f.arena;
        let d = f.d;
        let mut surface = MultiPoly::var(arena, f.z[3]).pow(d);
        for (alpha, &a) in &f.a {
            surface.add_assign_ref(&(&MultiPoly::var(arena, a) * &f.z_poly(alpha)));
        }

        let symbols = f.standard_symbols();
        let z4 = f.poly(f.z[3]);
        let [x1, x2, x3] = f.xi[3].map(|v| f.poly(v));
        let x1sq = x1.pow(2);
        let log_jet: HashMap<Var, MultiPoly> = HashMap::from([
            (f.xh4[0], &z4 * &x1),
            (f.xh4[1], &z4 * &(&x2 + &x1sq)),
            (
                f.xh4[2],
                &z4 * &(&(&x3 + &(&x1 * &x2).scale(&int(3))) + &(&x1sq * &x1)),
            ),
        ]);
        let mut eqs = vec![surface.clone()];
        for order in 1..=3 {
            let std = derivative_along_jet(&surface, order, &symbols)?;
            eqs.push(std.substitute(&log_jet)?);
        }
        let eqs: [MultiPoly; 4] = eqs.try_into().expect("four equations");

        let z4var = f.z[3];
        let tails = eqs.clone().map(|e| e.filter_terms(|m| m.exponent(z4var) == 0));
        let rules = std::array::from_fn(|k| {
            let (lead, c) = Self::leading(f, k);
            let mut rest = eqs[k].clone();
            rest.add_term(lead, -c.clone());
            rest.scale(&(int(-1) / c))
        });
        let gradients = eqs.clone().map(|e| e.gradient());
        Ok(VerticalJetLocus {
            family,
            eqs,
            tails,
            gradients,
            rules,
        })
    }

    /// Shared instance per degree.
    pub fn for_degree(d: u32) -> Result<Arc<VerticalJetLocus>, FamilyError> {
        type Cells = Mutex<HashMap<u32, Arc<OnceLock<Arc<VerticalJetLocus>>>>>;
        static CACHE: OnceLock<Cells> = OnceLock::new();
        let family = Family::for_degree(d)?;
        let cell = CACHE
            .get_or_init(Default::default)
            .lock()
            .expect("cache lock")
            .entry(d)
            .or_default()
            .clone();
        Ok(cell
            .get_or_init(|| Arc::new(VerticalJetLocus::build(family).expect("locus builds")))
            .clone())
    }

    /// Leading monomial and coefficient of equation `k`: `z4^d` and `d z4^d ξ_4^(k)`.
    fn leading(f: &Family, k: usize) -> (Monomial, Rational) {
        let z4d = Monomial::var(f.z[3], f.d);
        if k == 0 {
            (z4d, int(1))
        } else {
            (z4d.mul(&Monomial::var(f.xi[3][k - 1], 1)), int(f.d as i64))
        }
    }

    pub fn gradient(&self, k: usize) -> &HashMap<Var, MultiPoly> {
        &self.gradients[k]
    }

    /// Rewrite every monomial divisible by `z4^d` using the solved equations.
    ///
    /// A monomial carrying `ξ_4^(3)` is rewritten with the last equation, else
    /// one carrying `ξ_4^(2)` with the third, and so on. Each step lowers the
    /// `ξ_4` weight or removes `z4^d`, so the loop terminates.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let f = &self.family;
        let z4 = f.z[3];
        let mut done = MultiPoly::zero(&f.arena);
        let mut pending = p.clone();
        while !pending.is_zero() {
            let mut next = MultiPoly::zero(&f.arena);
            for (m, c) in pending.terms() {
                if m.exponent(z4) < f.d {
                    done.add_term(m.clone(), c.clone());
                    continue;
                }
                let k = (1..=3)
                    .rev()
                    .find(|&k| m.exponent(f.xi[3][k - 1]) > 0)
                    .unwrap_or(0);
                let mut rest = m.reduce(z4, f.d).expect("divisible");
                if k > 0 {
                    rest = rest.reduce(f.xi[3][k - 1], 1).expect("present");
                }
                next.add_assign_ref(&self.rules[k].mul_monomial(&rest, c));
            }
            pending = next;
        }
        done
    }
}
