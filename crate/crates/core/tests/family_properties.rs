use std::collections::{BTreeMap, HashMap};

use logjet::algebra::{int, rat, solve_rational, MultiPoly, Rational, RationalMatrix, Var};
use logjet::family::{
    check_tangency, falling_factorial_matrix, lemma1_field, monomial_derivative_matrix, prop1_matrix, prop1_solve,
    tail_slots, wronskian, wronskian_at, Family, VerticalJetLocus, PROP1_DEGREE, PROP1_UNKNOWNS,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn jet_block() -> impl Strategy<Value = [[Rational; 3]; 3]> {
    [[rational(), rational(), rational()], [rational(), rational(), rational()], [rational(), rational(), rational()]]
}

fn point(f: &Family, z: &[Rational; 3], jets: &[[Rational; 3]; 3]) -> HashMap<Var, Rational> {
    let mut values = HashMap::new();
    for j in 0..3 {
        values.insert(f.z[j], z[j].clone());
        for i in 0..3 {
            values.insert(f.xi[j][i], jets[j][i].clone());
        }
    }
    values
}

/// `D_k(z^α)` at a numeric jet, through the one-variable Taylor expansion of
/// `t ↦ ∏ (z_j + ξ_j t + ξ_j' t²/2 + ξ_j'' t³/6)^{α_j}`.
fn jet_image_at(alpha: &[u32; 3], z: &[Rational; 3], jets: &[[Rational; 3]; 3]) -> [Rational; 4] {
    let mut series = vec![int(1), int(0), int(0), int(0)];
    for j in 0..3 {
        let germ = [z[j].clone(), jets[j][0].clone(), &jets[j][1] / int(2), &jets[j][2] / int(6)];
        for _ in 0..alpha[j] {
            let mut next = vec![int(0); 4];
            for a in 0..4 {
                for b in 0..4 - a {
                    next[a + b] += &series[a] * &germ[b];
                }
            }
            series = next;
        }
    }
    let fact = [1, 1, 2, 6];
    std::array::from_fn(|k| &series[k] * int(fact[k]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wronskian_matches_numeric_determinant(jets in jet_block()) {
        let f = Family::for_degree(PROP1_DEGREE).unwrap();
        let w = wronskian(&f).unwrap();
        let zero = [int(0), int(0), int(0)];
        let at = w.evaluate(&point(&f, &zero, &jets)).as_constant().unwrap();
        prop_assert_eq!(at, wronskian_at(&jets).unwrap());
    }

    #[test]
    fn derivative_matrix_closed_form(rho in [4u32..=9, 4u32..=9, 4u32..=9]) {
        let f = Family::for_degree(30).unwrap();
        prop_assert_eq!(monomial_derivative_matrix(&f, &rho), falling_factorial_matrix(&rho));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// The symbolic Cramer solution, evaluated at a numeric jet, agrees with an
    /// elimination solve of the numerically assembled system.
    #[test]
    fn wronskian_solution_matches_numeric_solve(
        z in [rational(), rational(), rational()],
        jets in jet_block(),
        tail_values in prop::collection::vec(rational(), 16),
    ) {
        prop_assume!(wronskian_at(&jets).unwrap() != int(0));
        let f = Family::for_degree(PROP1_DEGREE).unwrap();
        let tail: BTreeMap<_, _> = tail_slots()
            .into_iter()
            .zip(&tail_values)
            .map(|(alpha, c)| (alpha, MultiPoly::constant(&f.arena, c.clone())))
            .collect();
        let sol = prop1_solve(&f, &tail).unwrap();
        let values = point(&f, &z, &jets);
        let w = sol.denominator.evaluate(&values).as_constant().unwrap();

        let mut m = RationalMatrix::zeros(4, 4);
        for (c, alpha) in PROP1_UNKNOWNS.iter().enumerate() {
            for (k, v) in jet_image_at(alpha, &z, &jets).into_iter().enumerate() {
                m.set(k, c, v);
            }
        }
        prop_assert_eq!(prop1_matrix(&f).unwrap().evaluate(&values).unwrap(), m.clone());
        let mut rhs = vec![int(0); 4];
        for (alpha, c) in tail_slots().iter().zip(&tail_values) {
            for (k, v) in jet_image_at(alpha, &z, &jets).into_iter().enumerate() {
                rhs[k] -= c * v;
            }
        }
        let x = solve_rational(&m, &rhs).unwrap();
        for (c, alpha) in PROP1_UNKNOWNS.iter().enumerate() {
            let n = sol.numerators[alpha].evaluate(&values).as_constant().unwrap();
            prop_assert_eq!(n / &w, x[c].clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lemma1_rational_parameters_are_tangent(v in [rational(), rational(), rational(), rational()], d in 2u32..=5) {
        let locus = VerticalJetLocus::for_degree(d).unwrap();
        let f = &locus.family;
        let params = v.map(|x| MultiPoly::constant(&f.arena, x));
        let field = lemma1_field(f, &params).unwrap();
        prop_assert!(check_tangency(&locus, &field).unwrap().is_none());
    }
}
