//! Fixtures shared by the benchmarks.

use ust_core::harness::synthetic::random_walks;
use ust_core::harness::{inject_uncertainty, InjectionConfig};
use ust_core::UncertainDataset;

/// `n` random walks of length `m` carrying uncertainty level `c`.
pub fn uncertain_walks(n: usize, m: usize, c: f64, seed: u64) -> UncertainDataset {
    let raw = random_walks(n, m, seed);
    inject_uncertainty(&raw, &InjectionConfig::new(c, seed).expect("valid level")).expect("injection succeeds")
}
