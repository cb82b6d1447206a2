use rayon::prelude::*;
use serde::Serialize;

use super::{
    compose_with_germ, derivative_along_jet_at, jet_of_germ, log_to_std, std_to_log, JetCoordinates,
    JetError, JetSampler, JetStyle, JetSymbols,
};
use crate::algebra::{Arena, VarArena};

const DIM: usize = 4;

/// Pass counts of the seeded jet suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetSuiteOutcome {
    pub samples: u64,
    pub seed: u64,
    pub roundtrip_pass: u64,
    pub oracle_pass: u64,
    pub derivative_pass: u64,
    /// Serialized jet of the lowest-index failing sample, if any.
    pub first_failure: Option<serde_json::Value>,
}

impl JetSuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.roundtrip_pass == self.samples
            && self.oracle_pass == self.samples
            && self.derivative_pass == self.samples
    }
}

struct SampleResult {
    roundtrip: bool,
    oracle: bool,
    derivative: bool,
    witness: Option<JetCoordinates>,
}

fn symbols() -> (Arena, JetSymbols) {
    let mut names: Vec<String> = (1..=DIM).map(|j| format!("z{j}")).collect();
    for j in 1..=DIM {
        for i in 1..=3 {
            names.push(format!("xh{j}_{i}"));
        }
    }
    let arena = VarArena::new(names).expect("distinct names");
    let v = |s: String| arena.var(&s).expect("declared");
    let symbols = JetSymbols {
        z: (1..=DIM).map(|j| v(format!("z{j}"))).collect(),
        jet: (1..=DIM)
            .map(|j| [1, 2, 3].map(|i| v(format!("xh{j}_{i}"))))
            .collect(),
    };
    (arena, symbols)
}

fn run_sample(sampler: &JetSampler, index: u64, arena: &Arena, symbols: &JetSymbols) -> Result<SampleResult, JetError> {
    let mut rng = sampler.rng_for(index);
    let frame = JetSampler::frame(&mut rng, DIM);
    let germ = JetSampler::germ(&mut rng, &frame);

    let log = jet_of_germ(&germ, &frame, JetStyle::Logarithmic)?;
    let std = log_to_std(&log)?;
    let roundtrip = std_to_log(&std)? == log && log_to_std(&std_to_log(&std)?)? == std;

    let direct = jet_of_germ(&germ, &frame, JetStyle::Standard)?;
    let oracle = direct == std;

    let p = JetSampler::z_poly(&mut rng, arena, symbols, 4, 6);
    let composed = compose_with_germ(&p, symbols, &germ);
    let mut derivative = true;
    for order in 1..=3u32 {
        let along = derivative_along_jet_at(&p, order, symbols, &direct)?;
        derivative &= along == composed.derivative_at_zero(order as usize);
    }

    let witness = (!(roundtrip && oracle && derivative)).then_some(log);
    Ok(SampleResult {
        roundtrip,
        oracle,
        derivative,
        witness,
    })
}

/// Round trip, series-oracle equivalence and derivative checks on `samples` seeded germs.
pub fn run_jet_suite(samples: u64, seed: u64) -> Result<JetSuiteOutcome, JetError> {
    let sampler = JetSampler::new(seed);
    let (arena, symbols) = symbols();
    let results = (0..samples)
        .into_par_iter()
        .map(|i| run_sample(&sampler, i, &arena, &symbols))
        .collect::<Result<Vec<_>, _>>()?;
    let count = |f: fn(&SampleResult) -> bool| results.iter().filter(|r| f(r)).count() as u64;
    Ok(JetSuiteOutcome {
        samples,
        seed,
        roundtrip_pass: count(|r| r.roundtrip),
        oracle_pass: count(|r| r.oracle),
        derivative_pass: count(|r| r.derivative),
        first_failure: results
            .iter()
            .find_map(|r| r.witness.as_ref())
            .map(|j| serde_json::to_value(j).expect("jets serialize")),
    })
}
