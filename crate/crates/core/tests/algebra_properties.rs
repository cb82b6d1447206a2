use std::collections::HashMap;

use logjet::algebra::{
    int, rat, solve_exact, Arena, Monomial, MultiPoly, PolyMatrix, RationalMatrix, VarArena,
};
use proptest::prelude::*;

fn arena() -> Arena {
    thread_local! {
        static ARENA: Arena = VarArena::new(["z1", "z2", "z3"]).unwrap();
    }
    ARENA.with(Arena::clone)
}

fn term_strategy(max_exp: u32) -> impl Strategy<Value = ([u32; 3], i64, i64)> {
    ([0..=max_exp, 0..=max_exp, 0..=max_exp], -9i64..=9, 1i64..=4)
}

fn poly_strategy(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(term_strategy(max_exp), 0..=max_terms).prop_map(|terms| {
        let a = arena();
        let vars: Vec<_> = a.vars().collect();
        MultiPoly::from_terms(
            &a,
            terms.into_iter().map(|(e, n, d)| {
                (Monomial::from_pairs(vars.iter().copied().zip(e)), rat(n, d))
            }),
        )
    })
}

/// Cofactor expansion along the first row with no memoization or collection tricks.
fn naive_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let a = arena();
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(&a);
    }
    let mut out = MultiPoly::zero(&a);
    for c in 0..n {
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][c] * &naive_det(&minor);
        out = if c % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in poly_strategy(5, 3), q in poly_strategy(5, 3), r in poly_strategy(5, 3)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn partials_commute(p in poly_strategy(8, 4), i in 0usize..3, j in 0usize..3) {
        let a = arena();
        let vars: Vec<_> = a.vars().collect();
        let ij = p.derivative(vars[i], 1).unwrap().derivative(vars[j], 1).unwrap();
        let ji = p.derivative(vars[j], 1).unwrap().derivative(vars[i], 1).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn identity_substitution(p in poly_strategy(8, 4)) {
        let a = arena();
        let bindings: HashMap<_, _> = a.vars().map(|v| (v, MultiPoly::var(&a, v))).collect();
        prop_assert_eq!(p.substitute(&bindings).unwrap(), p);
    }

    #[test]
    fn canonical_string_is_injective_on_pairs(p in poly_strategy(5, 3), q in poly_strategy(5, 3)) {
        prop_assert_eq!(p == q, p.to_string() == q.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn determinant_matches_cofactor_oracle(
        n in 1usize..=4,
        entries in prop::collection::vec(poly_strategy(3, 1), 16),
    ) {
        let a = arena();
        let rows: Vec<Vec<MultiPoly>> =
            (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let m = PolyMatrix::from_rows(&a, rows.clone()).unwrap();
        prop_assert_eq!(m.determinant().unwrap(), naive_det(&rows));
    }

    #[test]
    fn exact_solve_residual_vanishes(
        n in 1usize..=5,
        entries in prop::collection::vec(-5i64..=5, 25),
        rhs in prop::collection::vec(poly_strategy(4, 2), 5),
    ) {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, int(entries[i * 5 + j] + if i == j { 30 } else { 0 }));
            }
        }
        let x = solve_exact(&m, &rhs[..n]).unwrap();
        let lhs = m.to_poly(&arena()).mul_vec(&x).unwrap();
        prop_assert_eq!(lhs, rhs[..n].to_vec());
    }
}
