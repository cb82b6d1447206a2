/// Multi-index `α ∈ ℕ³` for the monomial `z1^α1 z2^α2 z3^α3`.
pub type MultiIndex = [u32; 3];

pub fn norm(a: &MultiIndex) -> u32 {
    a.iter().sum()
}

/// All `α` with `|α| ≤ max`, ascending in graded-lex order.
pub fn indices_up_to(max: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max - a {
            for c in 0..=max - a - b {
                out.push([a, b, c]);
            }
        }
    }
    out.sort_by_key(|a| (norm(a), *a));
    out
}

/// `α - β` when it stays in `ℕ³`.
pub fn checked_sub(a: &MultiIndex, b: &MultiIndex) -> Option<MultiIndex> {
    Some([
        a[0].checked_sub(b[0])?,
        a[1].checked_sub(b[1])?,
        a[2].checked_sub(b[2])?,
    ])
}

pub fn add(a: &MultiIndex, b: &MultiIndex) -> MultiIndex {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn unit(j: usize) -> MultiIndex {
    let mut e = [0; 3];
    e[j] = 1;
    e
}

/// `∏ α_r (α_r - 1) ... (α_r - D_r + 1)`.
pub fn falling(a: &MultiIndex, d: &MultiIndex) -> i64 {
    (0..3)
        .map(|r| (0..d[r]).map(|k| a[r] as i64 - k as i64).product::<i64>())
        .product()
}

/// Number of ordered index tuples `(j, k, ...)` in `{1,2,3}^|D|` that realize `D`.
pub fn multinomial(d: &MultiIndex) -> i64 {
    let fact = |n: u32| (1..=n as i64).product::<i64>();
    fact(norm(d)) / (fact(d[0]) * fact(d[1]) * fact(d[2]))
}

pub fn label(a: &MultiIndex) -> String {
    format!("{}{}{}", a[0], a[1], a[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(indices_up_to(3).len(), 20);
        assert_eq!(indices_up_to(5).len(), 56);
        let first: Vec<_> = indices_up_to(1);
        assert_eq!(first, vec![[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(falling(&[4, 4, 4], &[2, 1, 0]), 4 * 3 * 4);
        assert_eq!(falling(&[1, 0, 0], &[2, 0, 0]), 0);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        assert_eq!(multinomial(&[2, 1, 0]), 3);
        assert_eq!(multinomial(&[0, 0, 3]), 1);
    }
}
