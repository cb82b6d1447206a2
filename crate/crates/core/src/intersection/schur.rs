use std::fmt;

use serde::Serialize;

use super::cohom::{log_cotangent_chern, todd_p3, CohomClass};
use super::IntersectionError;
use crate::algebra::{int, Rational};

/// A dominant weight `λ1 ≥ λ2 ≥ λ3` of GL3.
///
/// [`Partition::new`] additionally demands `λ3 ≥ 0`; twisted weights from
/// [`Partition::twist`] may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub [i64; 3]);

impl Partition {
    pub fn new(l: [i64; 3]) -> Result<Self, IntersectionError> {
        if l[0] < l[1] || l[1] < l[2] || l[2] < 0 {
            return Err(IntersectionError::InvalidPartition(l));
        }
        Ok(Partition(l))
    }

    pub fn dominant(l: [i64; 3]) -> Result<Self, IntersectionError> {
        if l[0] < l[1] || l[1] < l[2] {
            return Err(IntersectionError::NotDominant(l));
        }
        Ok(Partition(l))
    }

    /// `λ - k(1,1,1)`.
    pub fn twist(self, k: i64) -> Self {
        Partition(self.0.map(|x| x - k))
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Weights of the irreducible representation, one per Gelfand–Tsetlin pattern
/// `(λ1 λ2 λ3 / a b / c)`; the weight is `(c, a + b - c, |λ| - a - b)`.
pub fn gt_weights(l: &Partition) -> Vec<[i64; 3]> {
    let [l1, l2, l3] = l.0;
    let mut out = Vec::new();
    for a in l2..=l1 {
        for b in l3..=l2 {
            for c in b..=a {
                out.push([c, a + b - c, l1 + l2 + l3 - a - b]);
            }
        }
    }
    out
}

/// `∏_{i<j} (λi - λj + j - i) / (j - i)`.
pub fn weyl_dimension(l: &Partition) -> i64 {
    let [l1, l2, l3] = l.0;
    (l1 - l2 + 1) * (l2 - l3 + 1) * (l1 - l3 + 2) / 2
}

/// The character `Σ_w e^{w·x}` up to degree 3, in the monomial symmetric basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurCharacter {
    pub rank: i64,
    /// Coefficient of `m_1`.
    pub m1: Rational,
    /// Coefficients of `m_2, m_11`.
    pub m2: [Rational; 2],
    /// Coefficients of `m_3, m_21, m_111`.
    pub m3: [Rational; 3],
}

impl SchurCharacter {
    /// Sum `(w·x)^k / k!` over the weights and read off monomial coefficients.
    pub fn from_weights(weights: &[[i64; 3]]) -> Self {
        let mut m1 = 0i128;
        let mut m2 = [0i128; 2];
        let mut m3 = [0i128; 3];
        for w in weights {
            let [a, b, c] = w.map(|x| x as i128);
            m1 += a;
            m2[0] += a * a;
            m2[1] += 2 * a * b;
            m3[0] += a * a * a;
            m3[1] += 3 * a * a * b;
            m3[2] += 6 * a * b * c;
        }
        let r = |x: i128, k: i64| Rational::new(x.into(), k.into());
        SchurCharacter {
            rank: weights.len() as i64,
            m1: r(m1, 1),
            m2: [r(m2[0], 2), r(m2[1], 2)],
            m3: [r(m3[0], 6), r(m3[1], 6), r(m3[2], 6)],
        }
    }

    pub fn of(l: &Partition) -> Self {
        Self::from_weights(&gt_weights(l))
    }

    /// Chern character of the Schur power of a rank-3 bundle with total Chern class `c`.
    pub fn chern_character(&self, c: &CohomClass) -> CohomClass {
        let [p1, p2, p3] = power_sums(c);
        let [m1, m2, m11, m3, m21, m111] = power_sum_expansion(&p1, &p2, &p3);
        CohomClass::new([
            int(self.rank),
            &self.m1 * &m1,
            &self.m2[0] * &m2 + &self.m2[1] * &m11,
            &self.m3[0] * &m3 + &self.m3[1] * &m21 + &self.m3[2] * &m111,
        ])
    }
}

/// Newton identities: power sums of the Chern roots from the elementary classes.
pub fn power_sums(c: &CohomClass) -> [Rational; 3] {
    let [_, e1, e2, e3] = &c.c;
    [
        e1.clone(),
        e1 * e1 - int(2) * e2,
        e1 * e1 * e1 - int(3) * e1 * e2 + int(3) * e3,
    ]
}

/// Monomial symmetric functions `m1, m2, m11, m3, m21, m111` in power sums.
pub fn power_sum_expansion(p1: &Rational, p2: &Rational, p3: &Rational) -> [Rational; 6] {
    [
        p1.clone(),
        p2.clone(),
        (p1 * p1 - p2) / int(2),
        p3.clone(),
        p1 * p2 - p3,
        (p1 * p1 * p1 - int(3) * p1 * p2 + int(2) * p3) / int(6),
    ]
}

/// `ch(Γ^λ E)` for the rank-3 bundle `E` with total Chern class `c`.
pub fn schur_character(l: &Partition, c: &CohomClass) -> CohomClass {
    SchurCharacter::of(l).chern_character(c)
}

/// `χ(ℙ³, V)` by Hirzebruch–Riemann–Roch.
pub fn hrr(ch: &CohomClass) -> Rational {
    (ch * &todd_p3()).degree()
}

/// `χ(ℙ³, Γ^λ Ω(log X))` for a smooth surface `X` of degree `d`.
pub fn euler_char_schur(l: &Partition, d: i64) -> Result<Rational, IntersectionError> {
    if d < 1 {
        return Err(IntersectionError::InvalidDegree(d));
    }
    Ok(hrr(&schur_character(l, &log_cotangent_chern(&int(d)))))
}
