use num_traits::Zero;

use super::{AlgebraError, MultiPoly, PolyMatrix, Rational, RationalMatrix};

fn singular(det: Rational) -> AlgebraError {
    AlgebraError::SingularSystem { determinant: det }
}

/// Solve `m·x = rhs` over the rationals. The residual is checked before returning.
pub fn solve_rational(m: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
    if rhs.len() != m.rows() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            got: rhs.len(),
        });
    }
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(singular(det));
    }
    let x = m.inverse()?.mul_vec(rhs)?;
    if m.mul_vec(&x)? != rhs {
        return Err(AlgebraError::ResidualNonzero("rational solve".into()));
    }
    Ok(x)
}

/// Solve `m·x = rhs` for a rational matrix and polynomial right-hand sides.
pub fn solve_exact(m: &RationalMatrix, rhs: &[MultiPoly]) -> Result<Vec<MultiPoly>, AlgebraError> {
    if rhs.len() != m.rows() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            got: rhs.len(),
        });
    }
    let Some(first) = rhs.first() else {
        return Ok(Vec::new());
    };
    let arena = first.arena().clone();
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(singular(det));
    }
    let inv = m.inverse()?;
    let n = m.cols();
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = MultiPoly::zero(&arena);
        for (j, r) in rhs.iter().enumerate() {
            acc.add_scaled(r, inv.get(i, j));
        }
        x.push(acc);
    }
    for (i, r) in rhs.iter().enumerate() {
        let mut residual = -r;
        for (j, xj) in x.iter().enumerate() {
            residual.add_scaled(xj, m.get(i, j));
        }
        if !residual.is_zero() {
            return Err(AlgebraError::ResidualNonzero(residual.to_string()));
        }
    }
    Ok(x)
}

/// Cramer solution `x_i = numerators[i] / denominator` of a polynomial system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CramerSolution {
    pub denominator: MultiPoly,
    pub numerators: Vec<MultiPoly>,
}

/// Cramer's rule over the fraction field: the denominator is `det m`.
///
/// Checks `m·numerators = det·rhs` identically before returning.
pub fn solve_cramer(m: &PolyMatrix, rhs: &[MultiPoly]) -> Result<CramerSolution, AlgebraError> {
    if rhs.len() != m.rows() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            got: rhs.len(),
        });
    }
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(singular(Rational::zero()));
    }
    let numerators = (0..m.cols())
        .map(|j| m.with_column(j, rhs).determinant())
        .collect::<Result<Vec<_>, _>>()?;
    let lhs = m.mul_vec(&numerators)?;
    for (l, r) in lhs.iter().zip(rhs) {
        let residual = l - &(&det * r);
        if !residual.is_zero() {
            return Err(AlgebraError::ResidualNonzero(residual.to_string()));
        }
    }
    Ok(CramerSolution {
        denominator: det,
        numerators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, VarArena};

    #[test]
    fn identity_returns_rhs() {
        let rhs = vec![int(3), rat(-1, 2), int(7)];
        assert_eq!(solve_rational(&RationalMatrix::identity(3), &rhs).unwrap(), rhs);
    }

    #[test]
    fn diagonal_system() {
        let m = RationalMatrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(4)]]).unwrap();
        assert_eq!(solve_rational(&m, &[int(1), int(1)]).unwrap(), vec![rat(1, 2), rat(1, 4)]);
    }

    #[test]
    fn singular_system_reports_determinant() {
        let m = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(
            solve_rational(&m, &[int(1), int(1)]),
            Err(AlgebraError::SingularSystem { determinant: int(0) })
        );
    }

    #[test]
    fn polynomial_rhs() {
        let arena = VarArena::new(["a", "b"]).unwrap();
        let a = MultiPoly::named(&arena, "a").unwrap();
        let b = MultiPoly::named(&arena, "b").unwrap();
        let m = RationalMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]).unwrap();
        let x = solve_exact(&m, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(x[0], (&a + &b).scale(&rat(1, 2)));
        assert_eq!(x[1], (&a - &b).scale(&rat(1, 2)));
    }

    #[test]
    fn cramer_symbolic_two_by_two() {
        let arena = VarArena::new(["p", "q", "r"]).unwrap();
        let p = MultiPoly::named(&arena, "p").unwrap();
        let q = MultiPoly::named(&arena, "q").unwrap();
        let r = MultiPoly::named(&arena, "r").unwrap();
        let one = MultiPoly::one(&arena);
        let m = PolyMatrix::from_rows(&arena, vec![vec![p.clone(), one.clone()], vec![one.clone(), q.clone()]])
            .unwrap();
        let sol = solve_cramer(&m, &[r.clone(), MultiPoly::zero(&arena)]).unwrap();
        assert_eq!(sol.denominator, &(&p * &q) - &one);
        assert_eq!(sol.numerators, vec![&r * &q, -&r]);
    }
}
