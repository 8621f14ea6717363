//! Shared fixtures for the benchmark targets.

use chevalley::{AdjointModule, SignConvention};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn module(case: &str) -> AdjointModule {
    AdjointModule::from_case(case, SignConvention::default()).expect("valid case")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
