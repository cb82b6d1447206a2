use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::JetError;
use crate::algebra::{int, Rational};

/// Number of stored coefficients: exact modulo `t^5`.
pub const SERIES_LEN: usize = 5;

/// Power series `c0 + c1 t + ... + c4 t^4`, exact modulo `t^5`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TruncatedSeries {
    pub c: [Rational; SERIES_LEN],
}

impl TruncatedSeries {
    pub fn new(c: [Rational; SERIES_LEN]) -> Self {
        TruncatedSeries { c }
    }

    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        let mut s = Self::zero();
        for (slot, v) in s.c.iter_mut().zip(coeffs) {
            *slot = v.clone();
        }
        s
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(v: Rational) -> Self {
        Self::from_coeffs(&[v])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The series `t`.
    pub fn t() -> Self {
        Self::from_coeffs(&[Rational::zero(), Rational::one()])
    }

    pub fn scale(&self, f: &Rational) -> Self {
        TruncatedSeries {
            c: std::array::from_fn(|i| &self.c[i] * f),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `1/self`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self, JetError> {
        if self.c[0].is_zero() {
            return Err(JetError::ZeroConstantTerm);
        }
        let inv0 = Rational::one() / &self.c[0];
        let mut r = Self::zero();
        r.c[0] = inv0.clone();
        for n in 1..SERIES_LEN {
            let s: Rational = (1..=n).map(|k| &self.c[k] * &r.c[n - k]).sum();
            r.c[n] = -s * &inv0;
        }
        Ok(r)
    }

    pub fn div(&self, other: &Self) -> Result<Self, JetError> {
        Ok(self * &other.reciprocal()?)
    }

    /// `d/dt`. The result is exact modulo `t^4`; its top slot is zero.
    pub fn derivative(&self) -> Self {
        let mut d = Self::zero();
        for k in 1..SERIES_LEN {
            d.c[k - 1] = &self.c[k] * int(k as i64);
        }
        d
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, JetError> {
        if !inner.c[0].is_zero() {
            return Err(JetError::CompositionConstantTerm);
        }
        let mut out = Self::zero();
        let mut power = Self::one();
        for k in 0..SERIES_LEN {
            out = &out + &power.scale(&self.c[k]);
            power = &power * inner;
        }
        Ok(out)
    }

    /// `k`-th derivative at `t = 0`, i.e. `k!·c_k`.
    pub fn derivative_at_zero(&self, k: usize) -> Rational {
        let fact: i64 = (1..=k as i64).product();
        &self.c[k] * int(fact)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            c: std::array::from_fn(|n| (0..=n).map(|k| &self.c[k] * &rhs.c[n - k]).sum()),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn exp_series(a: Rational) -> TruncatedSeries {
        let mut c = Rational::one();
        let mut s = TruncatedSeries::zero();
        for k in 0..SERIES_LEN {
            s.c[k] = c.clone();
            c = c * &a / int(k as i64 + 1);
        }
        s
    }

    #[test]
    fn reciprocal_of_one_plus_t() {
        let s = TruncatedSeries::from_coeffs(&[int(1), int(1)]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.c, [int(1), int(-1), int(1), int(-1), int(1)]);
        assert_eq!(&s * &r, TruncatedSeries::one());
        assert_eq!(TruncatedSeries::t().reciprocal(), Err(JetError::ZeroConstantTerm));
    }

    #[test]
    fn exp_is_its_own_derivative_modulo_truncation() {
        let e = exp_series(int(1));
        let d = e.derivative();
        assert_eq!(&d.c[..4], &e.c[..4]);
    }

    #[test]
    fn composition_of_exponentials() {
        let inner = TruncatedSeries::t().scale(&rat(3, 2));
        let composed = exp_series(int(1)).compose(&inner).unwrap();
        assert_eq!(composed, exp_series(rat(3, 2)));
        assert!(exp_series(int(1)).compose(&exp_series(int(1))).is_err());
    }
}
