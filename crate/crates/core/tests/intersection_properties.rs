use std::collections::BTreeSet;

use logjet::algebra::{int, rat, MultiPoly, Rational};
use logjet::intersection::{
    alpha, chi_graded_sum, chi_leading, chi_partition_polynomial, euler_char_schur, filtration_enumerate,
    finite_difference_leading, gt_weights, h2_constant, h2_leading, log_cotangent_chern, log_cotangent_chern_from_residue,
    polytope_integrate, relative_error, threshold_search, vars, weyl_dimension, AlphaSource, LambdaFloor, Partition,
    Polytope, DEFAULT_MAX_DEGREE,
};
use proptest::prelude::*;

fn binom(n: i64, k: i64) -> Rational {
    if n < k {
        return int(0);
    }
    (0..k).fold(int(1), |acc, i| acc * int(n - i) / int(i + 1))
}

#[test]
fn weyl_dimension_counts_weights() {
    for a in 0..=6 {
        for b in 0..=a {
            for c in 0..=b {
                let l = Partition::new([a, b, c]).unwrap();
                let weights = gt_weights(&l);
                assert_eq!(weights.len() as i64, weyl_dimension(&l), "{l}");
                assert!(weights.iter().all(|w| w.iter().sum::<i64>() == a + b + c));
            }
        }
    }
}

#[test]
fn chern_class_two_constructions() {
    for d in 1..=8 {
        assert_eq!(log_cotangent_chern(&int(d)), log_cotangent_chern_from_residue(&int(d)));
    }
}

/// `Γ^(k,k,k)` is the line bundle `det^k = O(k(d-4))`, whose Euler characteristic is `(n+1)(n+2)(n+3)/6`.
#[test]
fn determinant_powers_are_line_bundles() {
    for d in [1, 5, 7] {
        for k in 0..=8 {
            let n = k * (d - 4);
            let expected = int((n + 1) * (n + 2) * (n + 3)) / int(6);
            assert_eq!(euler_char_schur(&Partition::new([k, k, k]).unwrap(), d).unwrap(), expected, "d={d} k={k}");
        }
    }
}

#[test]
fn filtration_matches_brute_force_up_to_60() {
    for m in 1..=60u64 {
        let mi = m as i64;
        let mut brute = BTreeSet::new();
        for gamma in 0..=mi / 5 {
            for l2 in 0..=mi {
                for l3 in 0..=l2 {
                    let l1 = mi - gamma - 2 * l2 - 3 * l3;
                    if l1 - l2 >= gamma && l2 - l3 >= gamma && l1 - l3 >= gamma {
                        brute.insert((gamma, [l1, l2, l3]));
                    }
                }
            }
        }
        let fast: Vec<_> = filtration_enumerate(m).iter().map(|i| (i.gamma as i64, i.lambda.0)).collect();
        let unique: BTreeSet<_> = fast.iter().cloned().collect();
        assert_eq!(unique.len(), fast.len(), "duplicates at m = {m}");
        assert_eq!(unique, brute, "m = {m}");
    }
}

#[test]
fn chi_leading_matches_finite_differences() {
    let d = 20;
    let fd = finite_difference_leading(d, 265, 30, 9).unwrap();
    let exact = chi_leading().evaluate(&int(d), &int(0));
    assert_eq!(fd, exact);
    assert!(relative_error(&fd, &exact) < rat(1, 10_000));
}

#[test]
fn twisted_chi_leading_matches_finite_differences() {
    // δ = 1/30: every sample m is a multiple of 30 so δm is integral.
    let d = 11;
    let delta = rat(1, 30);
    let samples: Vec<Rational> = (0..=9u64)
        .map(|k| chi_graded_sum(300 + 30 * k, d, Some(&delta)).unwrap())
        .collect();
    let mut diff = int(0);
    for (k, s) in samples.iter().enumerate() {
        let sign = if (9 - k) % 2 == 0 { 1 } else { -1 };
        diff += int(sign) * binom(9, k as i64) * s;
    }
    let fact: i64 = (1..=9).product();
    let fd = diff / (int(fact) * num_traits::pow(int(30), 9));
    let exact = chi_leading().evaluate(&int(d), &delta);
    assert!(relative_error(&fd, &exact) < rat(1, 10_000), "{fd} vs {exact}");
}

#[test]
fn h2_leading_has_the_shape_c_times_d_plus_14() {
    let h2 = h2_leading().unwrap();
    let c = h2_constant().unwrap();
    assert_eq!(c, rat(49_403, 2_520_000_000));
    assert_eq!(h2.coeff(1, 0), c);
    assert_eq!(h2.coeff(0, 0), int(14) * &c);
    // Every δ-power carries the same (d + 14) factor.
    for j in 0..=3 {
        assert_eq!(h2.coeff(0, j), int(14) * h2.coeff(1, j));
    }
}

#[test]
fn volume_of_the_region() {
    let one = MultiPoly::one(&vars().arena);
    let v = polytope_integrate(&one, &Polytope::filtration_region(LambdaFloor::Zero)).unwrap();
    assert_eq!(v.as_constant().unwrap(), rat(1, 540));
    let n = logjet::intersection::filtration_count(2000) as f64;
    let n2 = logjet::intersection::filtration_count(1000) as f64;
    // Remove the boundary term before comparing.
    let extrapolated = 2.0 * n / 2000f64.powi(3) - n2 / 1000f64.powi(3);
    assert!((extrapolated * 540.0 - 1.0).abs() < 0.005);
}

#[test]
fn thresholds() {
    let derived = threshold_search(AlphaSource::Derived, DEFAULT_MAX_DEGREE).unwrap();
    assert_eq!(derived.threshold, 586);
    let transcribed = threshold_search(AlphaSource::Transcribed, DEFAULT_MAX_DEGREE).unwrap();
    assert_eq!(transcribed.threshold, 579);
    assert!(derived.previous_infeasible && transcribed.previous_infeasible);
}

#[test]
fn both_alpha_sources_share_their_leading_terms() {
    let (t, d) = (alpha(AlphaSource::Transcribed), alpha(AlphaSource::Derived));
    for j in 0..=3 {
        assert_eq!(t.coeff(3, j), d.coeff(3, j));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chi_polynomial_reproduces_hrr_off_grid(a in 0i64..14, b in 0i64..14, c in 0i64..14, d in prop::sample::select(vec![7i64, 11, 13, 30])) {
        let mut l = [a, b, c];
        l.sort_unstable_by(|x, y| y.cmp(x));
        let p = Partition::new(l).unwrap();
        let direct = euler_char_schur(&p, d).unwrap();
        let interpolated = chi_partition_polynomial().evaluate(&p, &int(d));
        prop_assert_eq!(direct, interpolated);
    }

    #[test]
    fn top_part_scales_as_sixth_power(a in 0i64..9, b in 0i64..9, c in 0i64..9, t in 1i64..5) {
        let top = &chi_partition_polynomial().top;
        let v = vars();
        let eval = |x: [i64; 3]| {
            let values = (0..3).map(|i| (v.l[i], int(x[i]))).chain([(v.d, int(9))]).collect();
            top.evaluate(&values).as_constant().unwrap()
        };
        prop_assert_eq!(eval([t * a, t * b, t * c]), num_traits::pow(int(t), 6) * eval([a, b, c]));
    }
}
