use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use super::chi::chi_partition_polynomial;
use super::polytope::{polytope_integrate, LambdaFloor, Polytope};
use super::sturm::UPoly;
use super::vars::vars;
use super::IntersectionError;
use crate::algebra::{format_rational, int, rat, Monomial, MultiPoly, Rational};

/// An `m⁹` coefficient: a polynomial in `d` and `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticCoefficient {
    pub poly: MultiPoly,
}

impl AsymptoticCoefficient {
    pub fn new(poly: MultiPoly) -> Self {
        AsymptoticCoefficient { poly }
    }

    /// Coefficient of `d^i δ^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        let v = vars();
        let m = Monomial::from_pairs([(v.d, i), (v.delta, j)]);
        self.poly.coefficient_of(&m)
    }

    pub fn evaluate(&self, d: &Rational, delta: &Rational) -> Rational {
        let v = vars();
        let values = HashMap::from([(v.d, d.clone()), (v.delta, delta.clone())]);
        self.poly.evaluate(&values).as_constant().expect("only d and delta")
    }

    /// Restriction to `δ = 0`.
    pub fn at_zero_twist(&self) -> AsymptoticCoefficient {
        AsymptoticCoefficient::new(self.poly.evaluate(&HashMap::from([(vars().delta, int(0))])))
    }

    /// The univariate polynomial `δ ↦ self(d, δ)`.
    pub fn in_delta(&self, d: &Rational) -> UPoly {
        let v = vars();
        let mut c = vec![int(0); self.poly.degree_in(&[v.delta]) as usize + 1];
        for (m, k) in self.poly.terms() {
            c[m.exponent(v.delta) as usize] += k * num_traits::pow(d.clone(), m.exponent(v.d) as usize);
        }
        UPoly::new(c)
    }

    /// `(i, j, coefficient)` for every nonzero `d^i δ^j`, ascending.
    pub fn terms(&self) -> Vec<(u32, u32, Rational)> {
        let v = vars();
        let mut out: Vec<_> = self
            .poly
            .terms()
            .map(|(m, c)| (m.exponent(v.d), m.exponent(v.delta), c.clone()))
            .collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    pub fn sub(&self, other: &AsymptoticCoefficient) -> AsymptoticCoefficient {
        AsymptoticCoefficient::new(&self.poly - &other.poly)
    }
}

impl Serialize for AsymptoticCoefficient {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            d: u32,
            delta: u32,
            coefficient: String,
        }
        #[derive(Serialize)]
        struct Repr {
            polynomial: String,
            terms: Vec<Term>,
        }
        Repr {
            polynomial: self.poly.to_canonical_string(),
            terms: self
                .terms()
                .into_iter()
                .map(|(d, delta, c)| Term {
                    d,
                    delta,
                    coefficient: format_rational(&c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// `p(λ - δ(1,1,1))`.
fn shift_by_delta(p: &MultiPoly) -> MultiPoly {
    let v = vars();
    let delta = v.poly(v.delta);
    let bindings = v.l.iter().map(|&l| (l, &v.poly(l) - &delta)).collect();
    p.substitute(&bindings).expect("same arena")
}

fn region() -> Polytope {
    Polytope::filtration_region(LambdaFloor::Zero)
}

/// `m⁹` coefficient of `Σ χ(Γ^{λ - δm}Ω(log X))` over the filtration.
pub fn chi_leading_coefficient() -> Result<AsymptoticCoefficient, IntersectionError> {
    let top = shift_by_delta(&chi_partition_polynomial().top);
    Ok(AsymptoticCoefficient::new(polytope_integrate(&top, &region())?))
}

/// `g(λ) = (3/2)|λ|³ ∏_{i<j} (λi - λj)`.
pub fn g_polynomial() -> MultiPoly {
    let v = vars();
    let l = v.l.map(|x| v.poly(x));
    let size = &(&l[0] + &l[1]) + &l[2];
    let diffs = &(&(&l[0] - &l[1]) * &(&l[0] - &l[2])) * &(&l[1] - &l[2]);
    (&size.pow(3) * &diffs).scale(&rat(3, 2))
}

pub fn g_at(l: [i64; 3]) -> Rational {
    let v = vars();
    let values = (0..3).map(|i| (v.l[i], int(l[i]))).collect();
    g_polynomial().evaluate(&values).as_constant().expect("bound")
}

/// `∫ g(λ - δ)` over the filtration region.
pub fn g_integral() -> Result<AsymptoticCoefficient, IntersectionError> {
    Ok(AsymptoticCoefficient::new(polytope_integrate(&shift_by_delta(&g_polynomial()), &region())?))
}

/// The constant `C` in the `C(d+14)m⁹` bound: `∫ g` at `δ = 0`.
pub fn h2_constant() -> Result<Rational, IntersectionError> {
    Ok(g_integral()?.coeff(0, 0))
}

/// `(d + 14) ∫ g(λ - δ)`: the `m⁹` coefficient of the `h²` bound.
pub fn h2_leading() -> Result<AsymptoticCoefficient, IntersectionError> {
    let v = vars();
    let factor = &v.poly(v.d) + &v.constant(int(14));
    Ok(AsymptoticCoefficient::new(&g_integral()?.poly * &factor))
}

/// Where the `α` polynomial comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaSource {
    /// The 16-term reference table, entered by hand.
    Transcribed,
    /// `chi_leading_coefficient - h2_leading`.
    Derived,
}

impl AlphaSource {
    pub fn name(self) -> &'static str {
        match self {
            AlphaSource::Transcribed => "transcribed",
            AlphaSource::Derived => "derived",
        }
    }
}

/// Common denominator of the transcribed `α`.
pub const ALPHA_DENOMINATOR: i64 = 408_240_000_000;

/// Numerators over [`ALPHA_DENOMINATOR`] as `(d power, δ power, value)`.
pub const ALPHA_TRANSCRIBED_TERMS: [(u32, u32, i64); 16] = [
    (0, 3, 67_737_600),
    (3, 0, 1945),
    (2, 0, -82_956),
    (0, 0, -968_320),
    (2, 1, 1_804_680),
    (2, 3, 12_700_800),
    (2, 2, -9_408_960),
    (1, 2, 37_635_840),
    (1, 1, -8_579_520),
    (1, 3, -50_803_200),
    (3, 3, -1_058_400),
    (3, 1, -105_030),
    (0, 2, -50_181_120),
    (0, 1, 12_165_120),
    (1, 0, 604_704),
    (3, 2, 784_080),
];

/// The transcribed `m⁹` coefficient of `χ` at `δ = 0`, as `(d power, value)`.
pub const CHI_LEADING_TRANSCRIBED: [(u32, (i64, i64)); 4] = [
    (3, (389, 81_648_000_000)),
    (2, (-6913, 34_020_000_000)),
    (1, (6299, 4_252_500_000)),
    (0, (-1513, 63_787_500)),
];

pub fn chi_leading_transcribed() -> AsymptoticCoefficient {
    let v = vars();
    let terms = CHI_LEADING_TRANSCRIBED
        .iter()
        .map(|&(i, (n, q))| (Monomial::var(v.d, i), rat(n, q)));
    AsymptoticCoefficient::new(MultiPoly::from_terms(&v.arena, terms))
}

pub fn alpha_transcribed() -> AsymptoticCoefficient {
    let v = vars();
    let terms = ALPHA_TRANSCRIBED_TERMS
        .iter()
        .map(|&(i, j, n)| (Monomial::from_pairs([(v.d, i), (v.delta, j)]), rat(n, ALPHA_DENOMINATOR)));
    AsymptoticCoefficient::new(MultiPoly::from_terms(&v.arena, terms))
}

pub fn alpha_derived() -> Result<AsymptoticCoefficient, IntersectionError> {
    Ok(chi_leading_coefficient()?.sub(&h2_leading()?))
}

/// Cached `α` for either source.
pub fn alpha(source: AlphaSource) -> &'static AsymptoticCoefficient {
    static TRANSCRIBED: OnceLock<AsymptoticCoefficient> = OnceLock::new();
    static DERIVED: OnceLock<AsymptoticCoefficient> = OnceLock::new();
    match source {
        AlphaSource::Transcribed => TRANSCRIBED.get_or_init(alpha_transcribed),
        AlphaSource::Derived => DERIVED.get_or_init(|| alpha_derived().expect("fixed region integrates")),
    }
}

/// Cached [`chi_leading_coefficient`].
pub fn chi_leading() -> &'static AsymptoticCoefficient {
    static CHI: OnceLock<AsymptoticCoefficient> = OnceLock::new();
    CHI.get_or_init(|| chi_leading_coefficient().expect("fixed region integrates"))
}

/// Upper end of the twist range on which the `α` estimate is stated.
pub fn delta_upper() -> Rational {
    rat(1, 18)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaValue {
    pub source: AlphaSource,
    #[serde(serialize_with = "crate::algebra::serialize_rational")]
    pub value: Rational,
    /// Set when `δ` lies outside `(0, 1/18)`.
    pub warning: Option<String>,
}

pub fn alpha_value(source: AlphaSource, d: &Rational, delta: &Rational) -> AlphaValue {
    let warning = if *delta <= int(0) || *delta >= delta_upper() {
        Some(format!("delta = {} lies outside (0, 1/18)", format_rational(delta)))
    } else {
        None
    };
    AlphaValue {
        source,
        value: alpha(source).evaluate(d, delta),
        warning,
    }
}
