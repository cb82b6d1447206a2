use std::cmp::Ordering;

use smallvec::SmallVec;

use super::Var;

/// A power product of arena variables.
///
/// Stored sparsely as `(variable, exponent)` pairs sorted by variable index,
/// with no zero exponents. `Ord` is graded lexicographic with lower variable
/// indices more significant, so a sorted term map iterates in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: SmallVec<[(u32, u32); 4]>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(var: Var, exp: u32) -> Self {
        let mut m = Self::one();
        if exp > 0 {
            m.factors.push((var.0, exp));
            m.degree = exp;
        }
        m
    }

    /// Build from arbitrary `(var, exp)` pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m = m.mul(&Self::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, var: Var) -> u32 {
        match self.factors.binary_search_by_key(&var.0, |&(v, _)| v) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        vars.iter().map(|&v| self.exponent(v)).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.factors.iter().map(|&(v, e)| (Var(v), e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SmallVec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// Lower the exponent of `var` by `k`; `None` when the exponent is too small.
    pub fn reduce(&self, var: Var, k: u32) -> Option<Self> {
        let pos = self.factors.binary_search_by_key(&var.0, |&(v, _)| v);
        match pos {
            Ok(i) if self.factors[i].1 >= k => {
                let mut m = self.clone();
                if m.factors[i].1 == k {
                    m.factors.remove(i);
                } else {
                    m.factors[i].1 -= k;
                }
                m.degree -= k;
                Some(m)
            }
            _ if k == 0 => Some(self.clone()),
            _ => None,
        }
    }

    /// Split into the part supported on `vars` and the rest.
    pub fn split(&self, vars: &[Var]) -> (Monomial, Monomial) {
        let mut inside = Monomial::one();
        let mut outside = Monomial::one();
        for &(v, e) in &self.factors {
            let target = if vars.contains(&Var(v)) {
                &mut inside
            } else {
                &mut outside
            };
            target.factors.push((v, e));
            target.degree += e;
        }
        (inside, outside)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(Var(v)) >= e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                if a[i].0 != b[j].0 {
                    // The side holding the smaller variable index has a positive
                    // exponent where the other has zero.
                    return if a[i].0 < b[j].0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                match a[i].1.cmp(&b[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                }
            }
            (a.len() - i).cmp(&(b.len() - j))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
