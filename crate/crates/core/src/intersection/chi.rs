use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::filtration::for_each_index;
use super::schur::{euler_char_schur, Partition};
use super::vars::{vars, Vars};
use super::IntersectionError;
use crate::algebra::{int, Monomial, MultiPoly, Rational, Var};

/// Total degree in `λ` of the Euler characteristic `χ(Γ^λ Ω(log X))`.
pub const LAMBDA_DEGREE: u32 = 6;
/// Degree nodes for the interpolation in `d`; `χ` has degree at most 3 in `d`.
pub const D_NODES: [i64; 5] = [1, 2, 3, 4, 5];
const D_DEGREE: u32 = 3;

/// `χ(Γ^λ Ω(log X))` as one polynomial in `(λ1, λ2, λ3, d)`.
#[derive(Debug, Clone)]
pub struct ChiPolynomial {
    pub full: MultiPoly,
    /// The part of degree exactly 6 in `λ`.
    pub top: MultiPoly,
}

impl ChiPolynomial {
    pub fn evaluate(&self, l: &Partition, d: &Rational) -> Rational {
        let v = vars();
        let mut values: HashMap<Var, Rational> = (0..3).map(|i| (v.l[i], int(l.0[i]))).collect();
        values.insert(v.d, d.clone());
        self.full.evaluate(&values).as_constant().expect("all variables bound")
    }

    /// Specialize `d`, leaving a polynomial in `λ`.
    pub fn at_degree(&self, d: &Rational) -> MultiPoly {
        self.full.evaluate(&HashMap::from([(vars().d, d.clone())]))
    }
}

/// Grid `(a, b, c)` with `a + b + c ≤ 6`; the partition is `(a+b+c, b+c, c)`.
pub fn grid_points() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for n in 0..=LAMBDA_DEGREE {
        for a in (0..=n).rev() {
            for b in (0..=n - a).rev() {
                out.push([a, b, n - a - b]);
            }
        }
    }
    out
}

pub fn grid_partition(p: &[u32; 3]) -> Partition {
    let [a, b, c] = p.map(i64::from);
    Partition([a + b + c, b + c, c])
}

/// `x (x-1) ... (x-i+1) / i!`.
fn binomial_poly(x: &MultiPoly, i: u32) -> MultiPoly {
    let mut out = MultiPoly::one(x.arena());
    for r in 0..i {
        out = &out * &(x - &MultiPoly::constant(x.arena(), int(r as i64)));
    }
    let fact: i64 = (1..=i as i64).product();
    out.scale(&(int(1) / int(fact)))
}

/// Newton forward-difference interpolation on the simplex grid at a fixed `d`.
fn interpolate_at_degree(v: &Vars, d: i64) -> Result<MultiPoly, IntersectionError> {
    let grid = grid_points();
    let mut values = HashMap::new();
    for p in &grid {
        values.insert(*p, euler_char_schur(&grid_partition(p), d)?);
    }
    let l = v.l.map(|x| v.poly(x));
    let coords = [&l[0] - &l[1], &l[1] - &l[2], l[2].clone()];
    let basis: Vec<Vec<MultiPoly>> = coords
        .iter()
        .map(|c| (0..=LAMBDA_DEGREE).map(|i| binomial_poly(c, i)).collect())
        .collect();
    let mut out = MultiPoly::zero(&v.arena);
    for &[i, j, k] in &grid {
        let mut diff = int(0);
        for p in 0..=i {
            for q in 0..=j {
                for r in 0..=k {
                    let sign = if (i + j + k - p - q - r) % 2 == 0 { 1 } else { -1 };
                    let w = sign * binomial(i as i64, p as i64) * binomial(j as i64, q as i64) * binomial(k as i64, r as i64);
                    diff += int(w) * &values[&[p, q, r]];
                }
            }
        }
        if !diff.is_zero() {
            let b = &(&basis[0][i as usize] * &basis[1][j as usize]) * &basis[2][k as usize];
            out.add_scaled(&b, &diff);
        }
    }
    Ok(out)
}

pub fn build_chi_polynomial() -> Result<ChiPolynomial, IntersectionError> {
    let v = vars();
    let slices: Vec<(i64, MultiPoly)> = D_NODES
        .par_iter()
        .map(|&d| interpolate_at_degree(v, d).map(|p| (d, p)))
        .collect::<Result<_, _>>()?;
    let dpoly = v.poly(v.d);
    let mut full = MultiPoly::zero(&v.arena);
    for (s, (ds, ps)) in slices.iter().enumerate() {
        let mut basis = MultiPoly::one(&v.arena);
        for (t, (dt, _)) in slices.iter().enumerate() {
            if s != t {
                basis = (&basis * &(&dpoly - &v.constant(int(*dt)))).scale(&(int(1) / int(ds - dt)));
            }
        }
        full = &full + &(ps * &basis);
    }
    if full.degree_in(&[v.d]) > D_DEGREE {
        return Err(IntersectionError::DegenerateGrid(format!(
            "degree {} in d exceeds {D_DEGREE}",
            full.degree_in(&[v.d])
        )));
    }
    if full.degree_in(&v.l) > LAMBDA_DEGREE {
        return Err(IntersectionError::DegenerateGrid("lambda degree exceeds 6".into()));
    }
    let top = full.filter_terms(|m| m.degree_in(&v.l) == LAMBDA_DEGREE);
    Ok(ChiPolynomial { full, top })
}

/// Shared instance of [`build_chi_polynomial`].
pub fn chi_partition_polynomial() -> &'static ChiPolynomial {
    static CHI: OnceLock<ChiPolynomial> = OnceLock::new();
    CHI.get_or_init(|| build_chi_polynomial().expect("fixed grid is unisolvent"))
}

/// A polynomial in `λ` with rational coefficients, scaled to integers for fast exact evaluation.
#[derive(Clone, Debug)]
pub struct IntegerForm {
    pub denominator: i128,
    terms: Vec<([u32; 3], i128)>,
}

impl IntegerForm {
    pub fn new(p: &MultiPoly) -> Result<Self, IntersectionError> {
        let v = vars();
        let mut lcm = BigInt::one();
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if m.degree_in(&v.l) != m.degree() {
                return Err(IntersectionError::NonHomogeneous);
            }
            let scaled = c * Rational::from_integer(lcm.clone());
            let n = scaled.numer().to_i128().ok_or(IntersectionError::Overflow)?;
            terms.push((v.l.map(|x| m.exponent(x)), n));
        }
        Ok(IntegerForm {
            denominator: lcm.to_i128().ok_or(IntersectionError::Overflow)?,
            terms,
        })
    }

    /// The scaled value `denominator · p(λ)`.
    pub fn eval_scaled(&self, l: [i64; 3]) -> Option<i128> {
        let mut total: i128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for r in 0..3 {
                t = t.checked_mul((l[r] as i128).checked_pow(e[r])?)?;
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }
}

fn twist_amount(m: u64, delta: Option<&Rational>) -> Result<i64, IntersectionError> {
    let Some(delta) = delta else { return Ok(0) };
    let k = delta * int(m as i64);
    if !k.is_integer() {
        return Err(IntersectionError::NonIntegralTwist { m, delta: delta.clone() });
    }
    k.to_integer().to_i64().ok_or(IntersectionError::Overflow)
}

/// `Σ χ(Γ^{λ - δm(1,1,1)} Ω(log X))` over the filtration in degree `m`,
/// evaluated through the interpolated polynomial.
pub fn chi_graded_sum(m: u64, d: i64, delta: Option<&Rational>) -> Result<Rational, IntersectionError> {
    if m == 0 {
        return Err(IntersectionError::InvalidM);
    }
    if d < 1 {
        return Err(IntersectionError::InvalidDegree(d));
    }
    let k = twist_amount(m, delta)?;
    let form = IntegerForm::new(&chi_partition_polynomial().at_degree(&int(d)))?;
    let mut total: i128 = 0;
    let mut overflow = false;
    for_each_index(m, |_, l| {
        match form.eval_scaled(l.map(|x| x - k)).and_then(|x| total.checked_add(x)) {
            Some(t) => total = t,
            None => overflow = true,
        }
    });
    if overflow {
        return Err(IntersectionError::Overflow);
    }
    Ok(Rational::new(BigInt::from(total), BigInt::from(form.denominator)))
}

/// [`chi_graded_sum`] by direct Riemann–Roch on every graded piece.
pub fn chi_graded_sum_direct(m: u64, d: i64, delta: Option<&Rational>) -> Result<Rational, IntersectionError> {
    if m == 0 {
        return Err(IntersectionError::InvalidM);
    }
    let k = twist_amount(m, delta)?;
    let mut pieces = Vec::new();
    for_each_index(m, |_, l| pieces.push(Partition(l).twist(k)));
    let mut total = int(0);
    for p in pieces {
        total += euler_char_schur(&p, d)?;
    }
    Ok(total)
}

/// `Δ^n S / (n! hⁿ)` for `S(m) = chi_graded_sum(m, d)` sampled at `start + k h`.
///
/// With `h` a multiple of 30 the samples lie on one polynomial in `m`, so the
/// result is the exact `mⁿ` coefficient.
pub fn finite_difference_leading(d: i64, start: u64, step: u64, n: u32) -> Result<Rational, IntersectionError> {
    let samples: Vec<Rational> = (0..=n as u64)
        .into_par_iter()
        .map(|k| chi_graded_sum(start + k * step, d, None))
        .collect::<Result<_, _>>()?;
    let mut diff = int(0);
    for (k, s) in samples.iter().enumerate() {
        let sign = if (n as usize - k).is_multiple_of(2) { 1 } else { -1 };
        diff += int(sign * binomial(n as i64, k as i64)) * s;
    }
    let fact: BigInt = (1..=n as i64).map(BigInt::from).product();
    let scale = Rational::from_integer(fact * BigInt::from(step).pow(n));
    Ok(diff / scale)
}

/// Relative difference `|a - b| / |b|`.
pub fn relative_error(a: &Rational, b: &Rational) -> Rational {
    if b.is_zero() {
        return (a - b).abs();
    }
    ((a - b) / b).abs()
}

/// `λ` exponents of a monomial.
pub fn lambda_exponents(m: &Monomial) -> [u32; 3] {
    vars().l.map(|x| m.exponent(x))
}
