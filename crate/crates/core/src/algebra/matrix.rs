use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{AlgebraError, Arena, MultiPoly, Rational, Var};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(RationalMatrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<(), AlgebraError> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<Rational, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = Rational::one();
        let mut prev = Rational::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = Rational::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n).map(|i| Self::identity(n).row(i).to_vec()).collect();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Err(AlgebraError::SingularSystem {
                    determinant: Rational::zero(),
                });
            };
            a.swap(k, p);
            inv.swap(k, p);
            let pivot = a[k][k].clone();
            for j in 0..n {
                a[k][j] /= &pivot;
                inv[k][j] /= &pivot;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let (ak, ik) = (a[k][j].clone(), inv[k][j].clone());
                    a[i][j] -= &f * ak;
                    inv[i][j] -= &f * ik;
                }
            }
        }
        Self::from_rows(inv)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        if x.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn to_poly(&self, arena: &Arena) -> PolyMatrix {
        PolyMatrix {
            arena: arena.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| MultiPoly::constant(arena, c.clone())).collect(),
        }
    }
}

/// Dense row-major matrix of polynomials over one arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    arena: Arena,
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

/// Polynomial determinants up to this size use Leibniz expansion.
const LEIBNIZ_MAX: usize = 6;

impl PolyMatrix {
    pub fn zeros(arena: &Arena, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            arena: arena.clone(),
            rows,
            cols,
            data: vec![MultiPoly::zero(arena); rows * cols],
        }
    }

    pub fn from_rows(arena: &Arena, rows: Vec<Vec<MultiPoly>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            for p in r {
                if !std::sync::Arc::ptr_eq(p.arena(), arena) {
                    return Err(AlgebraError::ArenaMismatch);
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            arena: arena.clone(),
            rows: n,
            cols,
            data,
        })
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MultiPoly) {
        assert!(value.same_arena(&self.data[0]), "{}", AlgebraError::ArenaMismatch);
        self.data[i * self.cols + j] = value;
    }

    /// Matrix with column `j` replaced by `col`.
    pub fn with_column(&self, j: usize, col: &[MultiPoly]) -> Self {
        let mut m = self.clone();
        for (i, p) in col.iter().enumerate() {
            m.data[i * self.cols + j] = p.clone();
        }
        m
    }

    /// Substitute rational values; `None` if any entry stays non-constant.
    pub fn evaluate(&self, values: &HashMap<Var, Rational>) -> Option<RationalMatrix> {
        let data: Option<Vec<Rational>> = self
            .data
            .iter()
            .map(|p| p.evaluate(values).as_constant())
            .collect();
        Some(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    pub fn mul_vec(&self, x: &[MultiPoly]) -> Result<Vec<MultiPoly>, AlgebraError> {
        if x.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = MultiPoly::zero(&self.arena);
            for (j, xj) in x.iter().enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() && !xj.is_zero() {
                    acc.add_assign_ref(&e.checked_mul(xj)?);
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Exact determinant.
    ///
    /// Leibniz expansion with term collection up to 6×6, memoized Laplace
    /// expansion along rows beyond that.
    pub fn determinant(&self) -> Result<MultiPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= LEIBNIZ_MAX {
            Ok(self.leibniz())
        } else {
            Ok(self.laplace())
        }
    }

    fn leibniz(&self) -> MultiPoly {
        let n = self.rows;
        let mut out = MultiPoly::zero(&self.arena);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        self.leibniz_rec(0, &mut perm, &mut used, MultiPoly::one(&self.arena), &mut out);
        out
    }

    fn leibniz_rec(
        &self,
        row: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        partial: MultiPoly,
        out: &mut MultiPoly,
    ) {
        let n = self.rows;
        if row == n {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            if inversions % 2 == 0 {
                out.add_assign_ref(&partial);
            } else {
                out.add_scaled(&partial, &-Rational::one());
            }
            return;
        }
        for c in 0..n {
            if used[c] || self.get(row, c).is_zero() {
                continue;
            }
            used[c] = true;
            perm[row] = c;
            let next = &partial * self.get(row, c);
            self.leibniz_rec(row + 1, perm, used, next, out);
            used[c] = false;
        }
    }

    fn laplace(&self) -> MultiPoly {
        let n = self.rows;
        let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
        self.minor(0, (1u64 << n) - 1, &mut memo)
    }

    /// Determinant of rows `row..n` restricted to the columns in `mask`.
    fn minor(&self, row: usize, mask: u64, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
        if row == self.rows {
            return MultiPoly::one(&self.arena);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut out = MultiPoly::zero(&self.arena);
        let mut position = 0usize;
        for c in 0..self.cols {
            if mask & (1 << c) == 0 {
                continue;
            }
            let e = self.get(row, c);
            if !e.is_zero() {
                let sub = self.minor(row + 1, mask & !(1 << c), memo);
                if !sub.is_zero() {
                    let term = e * &sub;
                    if position.is_multiple_of(2) {
                        out.add_assign_ref(&term);
                    } else {
                        out.add_scaled(&term, &-Rational::one());
                    }
                }
            }
            position += 1;
        }
        memo.insert(mask, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, VarArena};

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(rm(&[&[2, 0], &[0, 4]]).determinant().unwrap(), int(8));
        assert_eq!(rm(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(rm(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
        assert_eq!(
            rm(&[&[2, -3, 1], &[2, 0, -1], &[1, 4, 5]]).determinant().unwrap(),
            int(49)
        );
    }

    #[test]
    fn hilbert_inverse_round_trip() {
        let n = 5;
        let h = RationalMatrix::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| rat(1, (i + j + 1) as i64)).collect())
                .collect(),
        )
        .unwrap();
        let inv = h.inverse().unwrap();
        for j in 0..n {
            let col: Vec<Rational> = (0..n).map(|i| inv.get(i, j).clone()).collect();
            let e = h.mul_vec(&col).unwrap();
            for (i, v) in e.iter().enumerate() {
                assert_eq!(*v, if i == j { int(1) } else { int(0) });
            }
        }
        // det of the 5x5 Hilbert matrix
        assert_eq!(h.determinant().unwrap(), rat(1, 266716800000));
    }

    #[test]
    fn non_square_is_error() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(matches!(m.determinant(), Err(AlgebraError::NotSquare { .. })));
    }

    #[test]
    fn triangular_polynomial_determinant() {
        let arena = VarArena::new(["z1", "z2"]).unwrap();
        let z1 = MultiPoly::named(&arena, "z1").unwrap();
        let z2 = MultiPoly::named(&arena, "z2").unwrap();
        let m = PolyMatrix::from_rows(
            &arena,
            vec![vec![z1.clone(), MultiPoly::one(&arena)], vec![MultiPoly::zero(&arena), z2.clone()]],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), &z1 * &z2);
    }

    #[test]
    fn symbolic_three_by_three_has_six_terms() {
        let names: Vec<String> = (0..9).map(|k| format!("x{k}")).collect();
        let arena = VarArena::new(names.clone()).unwrap();
        let rows = (0..3)
            .map(|i| (0..3).map(|j| MultiPoly::named(&arena, &names[3 * i + j]).unwrap()).collect())
            .collect();
        let det = PolyMatrix::from_rows(&arena, rows).unwrap().determinant().unwrap();
        assert_eq!(det.len(), 6);
        assert_eq!(
            det.to_string(),
            "x0*x4*x8 - x0*x5*x7 - x1*x3*x8 + x1*x5*x6 + x2*x3*x7 - x2*x4*x6"
        );
    }

    #[test]
    fn laplace_matches_bareiss_on_constants() {
        let arena = VarArena::new(["z"]).unwrap();
        let n = 8;
        let m = RationalMatrix::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| int(((i * 7 + j * 3) % 5) as i64 - 2 + (i == j) as i64 * 4)).collect())
                .collect(),
        )
        .unwrap();
        let p = m.to_poly(&arena).determinant().unwrap();
        assert_eq!(p.as_constant().unwrap(), m.determinant().unwrap());
    }
}
