use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{JetFrame, JetSymbols, TruncatedSeries, SERIES_LEN};
use crate::algebra::{rat, Monomial, MultiPoly, Rational};

/// Seeded source of random germs, jets and polynomials.
///
/// Sample `i` draws from its own ChaCha stream, so results do not depend on
/// the order in which samples are evaluated.
#[derive(Clone, Copy, Debug)]
pub struct JetSampler {
    seed: u64,
}

impl JetSampler {
    pub fn new(seed: u64) -> Self {
        JetSampler { seed }
    }

    pub fn rng_for(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    pub fn rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
        loop {
            let r = rat(rng.gen_range(-9..=9), rng.gen_range(1..=6));
            if !nonzero || !r.is_zero() {
                return r;
            }
        }
    }

    /// Frame of dimension `n` with a random subset of logarithmic coordinates.
    pub fn frame<R: Rng>(rng: &mut R, n: usize) -> JetFrame {
        JetFrame::new(n, (0..n).filter(|_| rng.gen_bool(0.5))).expect("indices in range")
    }

    /// Germ with nonzero constant term on every logarithmic coordinate.
    pub fn germ<R: Rng>(rng: &mut R, frame: &JetFrame) -> Vec<TruncatedSeries> {
        (0..frame.n())
            .map(|j| {
                let c: Vec<Rational> = (0..SERIES_LEN)
                    .map(|k| Self::rational(rng, k == 0 && frame.is_log(j)))
                    .collect();
                TruncatedSeries::from_coeffs(&c)
            })
            .collect()
    }

    /// Random polynomial in `symbols.z` of total degree at most `max_degree`.
    pub fn z_poly<R: Rng>(
        rng: &mut R,
        arena: &crate::algebra::Arena,
        symbols: &JetSymbols,
        max_degree: u32,
        terms: usize,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(arena);
        for _ in 0..terms {
            let mut budget = rng.gen_range(0..=max_degree);
            let mut mono = Monomial::one();
            for &z in &symbols.z {
                let e = rng.gen_range(0..=budget);
                budget -= e;
                mono = mono.mul(&Monomial::var(z, e));
            }
            p.add_term(mono, Self::rational(rng, true));
        }
        p
    }
}

/// `p(germ(t))` as a truncated series, composing term by term.
pub fn compose_with_germ(p: &MultiPoly, symbols: &JetSymbols, germ: &[TruncatedSeries]) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero();
    for (mono, coef) in p.terms() {
        let mut term = TruncatedSeries::constant(coef.clone());
        for (v, e) in mono.factors() {
            let j = symbols
                .z
                .iter()
                .position(|&z| z == v)
                .expect("polynomial must only involve point coordinates");
            term = &term * &germ[j].pow(e);
        }
        out = &out + &term;
    }
    out
}
