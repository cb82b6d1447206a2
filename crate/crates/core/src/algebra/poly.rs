use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{format_rational, int, AlgebraError, Arena, Monomial, Rational, Var};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Canonical: zero coefficients are never stored and terms are kept in a
/// graded-lex ordered map, so `==` is equality of polynomials.
#[derive(Clone)]
pub struct MultiPoly {
    arena: Arena,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.arena, &other.arena) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero(arena: &Arena) -> Self {
        MultiPoly {
            arena: arena.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arena: &Arena, c: Rational) -> Self {
        Self::term(arena, Monomial::one(), c)
    }

    pub fn one(arena: &Arena) -> Self {
        Self::constant(arena, Rational::one())
    }

    pub fn var(arena: &Arena, var: Var) -> Self {
        Self::term(arena, Monomial::var(var, 1), Rational::one())
    }

    pub fn named(arena: &Arena, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var(arena, arena.var(name)?))
    }

    pub fn term(arena: &Arena, mono: Monomial, coef: Rational) -> Self {
        let mut p = Self::zero(arena);
        p.add_term(mono, coef);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(arena: &Arena, terms: I) -> Self {
        let mut p = Self::zero(arena);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn same_arena(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.arena, &other.arena)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient_of(&Monomial::one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_arena(other) {
            Ok(())
        } else {
            Err(AlgebraError::ArenaMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(&self.arena);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, exp: i64) -> Result<Self, AlgebraError> {
        if exp < 0 {
            return Err(AlgebraError::NegativeExponent(exp));
        }
        Ok(self.pow(exp as u32))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(&self.arena);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert!(self.same_arena(other), "{}", AlgebraError::ArenaMismatch);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        assert!(self.same_arena(other), "{}", AlgebraError::ArenaMismatch);
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.arena);
        }
        MultiPoly {
            arena: self.arena.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, coef: &Rational) -> Self {
        if coef.is_zero() {
            return Self::zero(&self.arena);
        }
        MultiPoly {
            arena: self.arena.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * coef)).collect(),
        }
    }

    fn check_var(&self, var: Var) -> Result<(), AlgebraError> {
        if self.arena.contains(var) {
            Ok(())
        } else {
            Err(AlgebraError::UnknownVariable(format!("#{}", var.index())))
        }
    }

    /// Iterated partial derivative `∂^order / ∂var^order`.
    pub fn derivative(&self, var: Var, order: u32) -> Result<Self, AlgebraError> {
        self.check_var(var)?;
        let mut out = Self::zero(&self.arena);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e < order {
                continue;
            }
            let falling: i64 = (0..order).map(|k| (e - k) as i64).product();
            out.add_term(m.reduce(var, order).expect("exponent checked"), c * int(falling));
        }
        Ok(out)
    }

    pub fn derivative_by_name(&self, name: &str, order: u32) -> Result<Self, AlgebraError> {
        self.derivative(self.arena.var(name)?, order)
    }

    /// All first partial derivatives in one pass over the terms.
    pub fn gradient(&self) -> HashMap<Var, MultiPoly> {
        let mut grad: HashMap<Var, MultiPoly> = HashMap::new();
        for (m, c) in &self.terms {
            for (v, e) in m.factors() {
                grad.entry(v)
                    .or_insert_with(|| Self::zero(&self.arena))
                    .add_term(m.reduce(v, 1).expect("present"), c * int(e as i64));
            }
        }
        grad
    }

    /// Simultaneous substitution `var -> poly` for every binding.
    pub fn substitute(&self, bindings: &HashMap<Var, MultiPoly>) -> Result<Self, AlgebraError> {
        for (v, p) in bindings {
            self.check_var(*v)?;
            self.check(p)?;
        }
        let mut powers: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero(&self.arena);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = Self::one(&self.arena);
            for (v, e) in m.factors() {
                match bindings.get(&v) {
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pw;
                    }
                    None => kept = kept.mul(&Monomial::var(v, e)),
                }
            }
            for (fm, fc) in &factor.terms {
                out.add_term(fm.mul(&kept), fc * c);
            }
        }
        Ok(out)
    }

    /// Substitute rational values for some variables.
    pub fn evaluate(&self, values: &HashMap<Var, Rational>) -> Self {
        let mut out = Self::zero(&self.arena);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut coef = c.clone();
            for (v, e) in m.factors() {
                match values.get(&v) {
                    Some(x) => coef *= num_traits::pow(x.clone(), e as usize),
                    None => kept = kept.mul(&Monomial::var(v, e)),
                }
            }
            out.add_term(kept, coef);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Maximum over terms of the combined degree in `vars`.
    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        self.terms.keys().map(|m| m.degree_in(vars)).max().unwrap_or(0)
    }

    /// Maximum over terms of `Σ weight(v)·exp(v)`.
    pub fn max_weight<F: Fn(Var) -> u32>(&self, weight: F) -> u32 {
        self.terms
            .keys()
            .map(|m| m.factors().map(|(v, e)| weight(v) * e).sum())
            .max()
            .unwrap_or(0)
    }

    /// `Some(k)` when every term has degree exactly `k` in `vars` (zero is homogeneous of every degree; reported as 0).
    pub fn homogeneous_degree_in(&self, vars: &[Var]) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree_in(vars));
        match degrees.next() {
            None => Some(0),
            Some(first) => degrees.all(|d| d == first).then_some(first),
        }
    }

    /// Coefficient of `pattern` viewed as a polynomial in `over`.
    ///
    /// Keeps the terms whose exponents on the variables in `over` match
    /// `pattern` exactly, with those variables stripped out.
    pub fn coefficient(&self, over: &[Var], pattern: &Monomial) -> Self {
        let mut out = Self::zero(&self.arena);
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(over);
            if &inside == pattern {
                out.add_term(outside, c.clone());
            }
        }
        out
    }

    /// Keep only the terms satisfying `pred`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        MultiPoly {
            arena: self.arena.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.factors().map(|(v, _)| v)).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Canonical text: terms in descending graded-lex order, e.g. `3*z1^2*z2 - 1/2`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .factors()
                .map(|(v, e)| {
                    let name = self.arena.name(v);
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&format_rational(&magnitude));
            } else {
                if !magnitude.is_one() {
                    out.push_str(&format_rational(&magnitude));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

// Operator forms panic on arena mismatch; the `checked_*` methods report it.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("arena mismatch in polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("arena mismatch in polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("arena mismatch in polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, VarArena};

    fn setup() -> (Arena, MultiPoly, MultiPoly) {
        let arena = VarArena::new(["z1", "z2", "z3"]).unwrap();
        let z1 = MultiPoly::named(&arena, "z1").unwrap();
        let z2 = MultiPoly::named(&arena, "z2").unwrap();
        (arena, z1, z2)
    }

    #[test]
    fn additive_inverse_is_zero() {
        let (_, z1, _) = setup();
        assert!((&z1 + &(-&z1)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let (_, z1, z2) = setup();
        let lhs = &(&z1 + &z2) * &(&z1 - &z2);
        let rhs = &z1.pow(2) - &z2.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_canonical_string(), "z1^2 - z2^2");
    }

    #[test]
    fn binomial_fourth_power_against_repeated_multiplication() {
        let (arena, z1, _) = setup();
        let base = &MultiPoly::one(&arena) - &z1;
        let mut repeated = MultiPoly::one(&arena);
        for _ in 0..4 {
            repeated = &repeated * &base;
        }
        assert_eq!(base.checked_pow(4).unwrap(), repeated);
        assert_eq!(repeated.to_canonical_string(), "z1^4 - 4*z1^3 + 6*z1^2 - 4*z1 + 1");
    }

    #[test]
    fn negative_power_and_mismatch_are_errors() {
        let (_, z1, _) = setup();
        assert_eq!(z1.checked_pow(-1), Err(AlgebraError::NegativeExponent(-1)));
        let other = VarArena::new(["z1"]).unwrap();
        let w = MultiPoly::named(&other, "z1").unwrap();
        assert_eq!(z1.checked_add(&w), Err(AlgebraError::ArenaMismatch));
        assert_eq!(z1.checked_mul(&w), Err(AlgebraError::ArenaMismatch));
    }

    #[test]
    fn derivatives() {
        let (arena, z1, z2) = setup();
        let v1 = arena.var("z1").unwrap();
        let p = &z1.pow(3) * &z2;
        assert_eq!(p.derivative(v1, 1).unwrap(), (&z1.pow(2) * &z2).scale(&int(3)));
        assert_eq!(z1.pow(3).derivative(v1, 2).unwrap(), z1.scale(&int(6)));
        assert!((&z1.pow(2) * &z2).derivative(v1, 3).unwrap().is_zero());
        assert!(matches!(
            p.derivative_by_name("w", 1),
            Err(AlgebraError::UnknownVariable(_))
        ));
    }

    #[test]
    fn substitution() {
        let (arena, z1, z2) = setup();
        let (v1, v2) = (arena.var("z1").unwrap(), arena.var("z2").unwrap());
        let p = &z1.pow(2) + &z2;
        let zero = HashMap::from([(v2, MultiPoly::zero(&arena))]);
        assert_eq!(p.substitute(&zero).unwrap(), z1.pow(2));
        let swap = HashMap::from([(v1, z2.clone()), (v2, z1.clone())]);
        let q = &z1 * &z2;
        assert_eq!(q.substitute(&swap).unwrap(), q);
    }

    #[test]
    fn canonical_string_orders_by_grlex() {
        let (arena, z1, z2) = setup();
        let p = &(&z1.pow(2) * &z2).scale(&int(3)) - &MultiPoly::constant(&arena, rat(1, 2));
        assert_eq!(p.to_string(), "3*z1^2*z2 - 1/2");
        let q = &(&z2.pow(3) + &(&z1 * &z2)) + &z1.pow(2);
        assert_eq!(q.to_string(), "z2^3 + z1^2 + z1*z2");
    }

    #[test]
    fn coefficient_extraction() {
        let (arena, z1, z2) = setup();
        let (v1, v2) = (arena.var("z1").unwrap(), arena.var("z2").unwrap());
        let p = &(&(&z1 * &z2).scale(&int(5)) + &z1.pow(2)) + &z2.scale(&int(7));
        let c = p.coefficient(&[v2], &Monomial::var(v2, 1));
        assert_eq!(c, &z1.scale(&int(5)) + &MultiPoly::constant(&arena, int(7)));
        let c0 = p.coefficient(&[v1, v2], &Monomial::var(v1, 2));
        assert_eq!(c0, MultiPoly::one(&arena));
    }

    #[test]
    fn gradient_matches_derivative() {
        let (arena, z1, z2) = setup();
        let p = &(&z1.pow(3) * &z2.pow(2)) + &z2.scale(&int(4));
        let grad = p.gradient();
        for v in arena.vars() {
            let expected = p.derivative(v, 1).unwrap();
            let got = grad.get(&v).cloned().unwrap_or_else(|| MultiPoly::zero(&arena));
            assert_eq!(got, expected);
        }
    }
}
