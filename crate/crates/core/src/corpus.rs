//! Deterministic random instances for agreement suites and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{generate_random, ProperIntervalModel};
use crate::rational::{self, Rational};

#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub k: usize,
    pub model: ProperIntervalModel,
    /// Same intervals with integer costs in `0..=max_cost`.
    pub weighted: ProperIntervalModel,
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub k_max: usize,
    pub max_cost: i64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { n_min: 4, n_max: 14, k_max: 3, max_cost: 10 }
    }
}

/// Instance number `index` of the corpus described by `spec`. `k` cycles
/// through `1..=k_max`; `n`, the interval length and the costs come from a
/// stream seeded by `base_seed` and `index`.
pub fn instance(spec: &CorpusSpec, base_seed: u64, index: u64) -> Result<Instance> {
    let seed = base_seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(spec.n_min..=spec.n_max);
    let k = 1 + (index as usize % spec.k_max);
    // lengths 1, 1.5, ..., 7 against left-endpoint steps of 1..=4
    let stretch = Rational::new(rng.gen_range(2..=14), 2);
    let model = generate_random(n, rng.gen(), stretch)?;
    let costs: Vec<Rational> = (0..n).map(|_| rational::int(rng.gen_range(0..=spec.max_cost))).collect();
    let weighted = model.with_costs(costs)?;
    Ok(Instance { seed, k, model, weighted })
}

pub fn corpus(spec: &CorpusSpec, base_seed: u64, count: usize) -> Result<Vec<Instance>> {
    (0..count as u64).map(|i| instance(spec, base_seed, i)).collect()
}
