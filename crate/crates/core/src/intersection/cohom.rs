use std::ops::{Add, Mul};

use serde::Serialize;

use crate::algebra::{format_rational, int, rat, Rational};

/// An element `c0 + c1 h + c2 h² + c3 h³` of the cohomology ring of ℙ³.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    pub c: [Rational; 4],
}

impl CohomClass {
    pub fn new(c: [Rational; 4]) -> Self {
        CohomClass { c }
    }

    pub fn zero() -> Self {
        CohomClass::new(std::array::from_fn(|_| int(0)))
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(r: Rational) -> Self {
        let mut out = Self::zero();
        out.c[0] = r;
        out
    }

    /// `k·h`.
    pub fn h(k: Rational) -> Self {
        let mut out = Self::zero();
        out.c[1] = k;
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CohomClass::new(self.c.clone().map(|x| x * k))
    }

    /// `∫_{ℙ³}`: the `h³` coefficient.
    pub fn degree(&self) -> Rational {
        self.c[3].clone()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `exp(x)` for `x` with zero constant term.
    pub fn exp_nilpotent(&self) -> Self {
        assert_eq!(self.c[0], int(0), "exp needs a nilpotent argument");
        let mut out = Self::one();
        let mut term = Self::one();
        for k in 1..=3 {
            term = (&term * self).scale(&rat(1, k));
            out = &out + &term;
        }
        out
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.c.clone().map(|x| format_rational(&x))
    }
}

impl Add for &CohomClass {
    type Output = CohomClass;
    fn add(self, rhs: &CohomClass) -> CohomClass {
        CohomClass::new(std::array::from_fn(|k| &self.c[k] + &rhs.c[k]))
    }
}

impl Mul for &CohomClass {
    type Output = CohomClass;
    fn mul(self, rhs: &CohomClass) -> CohomClass {
        let mut out = CohomClass::zero();
        for i in 0..4 {
            for j in 0..4 - i {
                out.c[i + j] += &self.c[i] * &rhs.c[j];
            }
        }
        out
    }
}

impl Serialize for CohomClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Todd class of ℙ³: `(h / (1 - e^{-h}))⁴ = 1 + 2h + 11/6 h² + h³`.
pub fn todd_p3() -> CohomClass {
    CohomClass::new([int(1), int(2), rat(11, 6), int(1)])
}

/// The Todd class recomputed from its defining power series, for tests.
pub fn todd_p3_from_series() -> CohomClass {
    // h / (1 - e^{-h}) = 1 + h/2 + h²/12 + 0·h³
    let one = CohomClass::new([int(1), rat(1, 2), rat(1, 12), int(0)]);
    one.pow(4)
}

/// Total Chern class `(1 - h)⁴ (1 - d h)^{-1}` of the logarithmic cotangent
/// bundle of ℙ³ along a smooth surface of degree `d`.
pub fn log_cotangent_chern(d: &Rational) -> CohomClass {
    let geometric = CohomClass::new([int(1), d.clone(), d * d, d * d * d]);
    &CohomClass::new([int(1), int(-1), int(0), int(0)]).pow(4) * &geometric
}

/// The same class from the residue sequence `0 → Ω → Ω(log X) → O_X → 0`,
/// with `c(Ω_{ℙ³}) = (1 - h)⁴` and `c(O_X) = 1 / (1 - d h)` assembled from the
/// exact sequence `0 → O(-d) → O → O_X → 0`.
pub fn log_cotangent_chern_from_residue(d: &Rational) -> CohomClass {
    let omega = CohomClass::new([int(1), int(-4), int(6), int(-4)]);
    // c(O(-d))^{-1} computed by Newton iteration on the truncated ring.
    let c_minus_d = CohomClass::new([int(1), -d.clone(), int(0), int(0)]);
    let mut inv = CohomClass::one();
    for _ in 0..4 {
        let err = &c_minus_d * &inv;
        let two_minus = CohomClass::new([int(2) - &err.c[0], -err.c[1].clone(), -err.c[2].clone(), -err.c[3].clone()]);
        inv = &inv * &two_minus;
    }
    &omega * &inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_product() {
        let h = CohomClass::h(int(1));
        assert_eq!(h.pow(3).degree(), int(1));
        assert_eq!(h.pow(4), CohomClass::zero());
    }

    #[test]
    fn todd_from_series() {
        assert_eq!(todd_p3(), todd_p3_from_series());
    }

    #[test]
    fn first_chern_class() {
        for d in 1..=9 {
            let c = log_cotangent_chern(&int(d));
            assert_eq!(c.c[1], int(d - 4));
            assert_eq!(c, log_cotangent_chern_from_residue(&int(d)));
        }
        assert_eq!(log_cotangent_chern(&int(4)).c[1], int(0));
    }

    #[test]
    fn second_chern_class_is_quadratic_in_d() {
        // c2 = d² - 4d + 6; check against the closed form at five degrees.
        for d in 1..=5 {
            assert_eq!(log_cotangent_chern(&int(d)).c[2], int(d * d - 4 * d + 6));
        }
    }

    #[test]
    fn exponential() {
        let e = CohomClass::h(int(2)).exp_nilpotent();
        assert_eq!(e, CohomClass::new([int(1), int(2), int(2), rat(4, 3)]));
    }
}
