use serde::Serialize;

use super::schur::Partition;

/// One graded piece `Γ^λ` of the order-3 jet differential filtration in degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiltrationIndex {
    pub m: u64,
    pub gamma: u64,
    pub lambda: Partition,
}

/// All `(γ, λ)` with `0 ≤ γ ≤ m/5`, `λ1 + 2λ2 + 3λ3 = m - γ`, `λi - λj ≥ γ` for
/// `i < j` and `λ3 ≥ 0`.
///
/// Sorted by `γ` ascending, then `λ` descending.
pub fn filtration_enumerate(m: u64) -> Vec<FiltrationIndex> {
    let mut out = Vec::new();
    for_each_index(m, |gamma, l| {
        out.push(FiltrationIndex {
            m,
            gamma,
            lambda: Partition(l),
        })
    });
    out
}

/// Streaming form of [`filtration_enumerate`], same order.
pub fn for_each_index<F: FnMut(u64, [i64; 3])>(m: u64, mut f: F) {
    let m = m as i64;
    for gamma in 0..=m / 5 {
        let s = m - gamma;
        let mut block = Vec::new();
        let mut l3 = 0;
        // λ1 ≥ λ3 + 2γ and λ2 ≥ λ3 + γ force s ≥ 6λ3 + 4γ.
        while 6 * l3 + 4 * gamma <= s {
            let mut l2 = l3 + gamma;
            loop {
                let l1 = s - 2 * l2 - 3 * l3;
                if l1 < l2 + gamma {
                    break;
                }
                block.push([l1, l2, l3]);
                l2 += 1;
            }
            l3 += 1;
        }
        block.sort_unstable_by(|a, b| b.cmp(a));
        for l in block {
            f(gamma as u64, l);
        }
    }
}

pub fn filtration_count(m: u64) -> u64 {
    let mut n = 0;
    for_each_index(m, |_, _| n += 1);
    n
}
