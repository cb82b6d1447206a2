use num_traits::{Signed, Zero};

use crate::algebra::{int, Rational};

/// Dense univariate polynomial, `c[k]` the coefficient of `x^k`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub c: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `0` for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(int(0), |acc, k| acc * x + k)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    /// Remainder of Euclidean division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let lead = divisor.c.last().expect("nonzero");
        let n = divisor.c.len();
        while r.len() >= n {
            let q = r.last().expect("nonempty") / lead;
            let shift = r.len() - n;
            for (k, a) in divisor.c.iter().enumerate() {
                r[shift + k] -= &q * a;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    /// `p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)`.
    pub fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            chain.push(UPoly::new(r.c.into_iter().map(|x| -x).collect()));
        }
        chain.pop();
        chain
    }

    fn sign_changes(chain: &[UPoly], x: &Rational) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        Self::sign_changes(&chain, a) - Self::sign_changes(&chain, b)
    }

    /// Distinct real roots in the open interval `(a, b)`.
    pub fn count_roots_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count_roots(a, b);
        if self.eval(b).is_zero() {
            n - 1
        } else {
            n
        }
    }

    /// Sign of `p` just to the right of `x` (`dir = 1`) or left (`dir = -1`):
    /// the sign of the first nonvanishing derivative, flipped for odd order on the left.
    fn side_sign(&self, x: &Rational, dir: i8) -> i8 {
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let v = p.eval(x);
            if !v.is_zero() {
                let s = if v.is_positive() { 1 } else { -1 };
                return if dir < 0 && k % 2 == 1 { -s } else { s };
            }
            if p.is_zero() {
                return 0;
            }
            p = p.derivative();
            k += 1;
        }
    }

    /// A rational `x ∈ (a, b)` with `p(x) > 0`, if one exists, decided exactly.
    ///
    /// Bisects while an interval holds two or more roots; with at most one root the
    /// sign on each side is read off from the endpoint germs.
    pub fn positive_witness(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        if a >= b {
            return None;
        }
        let mid = (a + b) / int(2);
        if self.eval(&mid).is_positive() {
            return Some(mid);
        }
        if self.is_zero() {
            return None;
        }
        match self.count_roots_open(a, b) {
            0 => None,
            1 => {
                // p(mid) ≤ 0. The root splits (a, b) into two sign-constant pieces.
                let left = self.side_sign(a, 1);
                let right = self.side_sign(b, -1);
                if left > 0 {
                    return self.positive_witness_near(a, b, true);
                }
                if right > 0 {
                    return self.positive_witness_near(a, b, false);
                }
                None
            }
            _ => self
                .positive_witness(a, &mid)
                .or_else(|| self.positive_witness(&mid, b)),
        }
    }

    /// Halve toward the chosen endpoint until the midpoint is positive.
    fn positive_witness_near(&self, a: &Rational, b: &Rational, left: bool) -> Option<Rational> {
        let (mut lo, mut hi) = (a.clone(), b.clone());
        for _ in 0..4096 {
            let mid = (&lo + &hi) / int(2);
            if self.eval(&mid).is_positive() {
                return Some(mid);
            }
            if left {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn root_counts() {
        // (x - 1)(x - 2)(x - 3)
        let q = p(&[-6, 11, -6, 1]);
        assert_eq!(q.count_roots(&int(0), &int(4)), 3);
        assert_eq!(q.count_roots(&int(0), &int(2)), 2);
        assert_eq!(q.count_roots_open(&int(1), &int(3)), 1);
        // x² + 1
        assert_eq!(p(&[1, 0, 1]).count_roots(&int(-10), &int(10)), 0);
        // (x - 1)² counts once
        assert_eq!(p(&[1, -2, 1]).count_roots(&int(0), &int(2)), 1);
    }

    #[test]
    fn positivity() {
        // -(x - 1)² is never positive.
        assert!(p(&[-1, 2, -1]).positive_witness(&int(0), &int(2)).is_none());
        // (x - 1)(x - 2)(x - 3) is positive on (1, 2) only within (0, 2.5).
        let q = p(&[-6, 11, -6, 1]);
        let w = q.positive_witness(&int(0), &rat(5, 2)).unwrap();
        assert!(w > int(1) && w < int(2));
        assert!(q.positive_witness(&int(2), &int(3)).is_none());
        // Positive only in a narrow window near the left end.
        let narrow = p(&[1, -1000]);
        let w = narrow.positive_witness(&int(0), &int(1)).unwrap();
        assert!(narrow.eval(&w) > int(0));
        // Zero polynomial.
        assert!(UPoly::new(vec![]).positive_witness(&int(0), &int(1)).is_none());
    }
}
