//! Fixed inputs shared by the benchmarks.

use drazin_core::generate::generate;
use drazin_core::{Case, GenRecipe, Instance};

/// The first `count` generated instances of a case, seeds `0..count`.
pub fn instances(case: Case, count: u64) -> Vec<Instance> {
    (0..count)
        .map(|seed| generate(&GenRecipe::new(case, seed)).expect("benchmark instances generate"))
        .collect()
}

/// Pair instances of one size, seeds `0..count`.
pub fn pair_instances(case: Case, n: usize, count: u64) -> Vec<Instance> {
    (0..count)
        .map(|seed| generate(&GenRecipe::new(case, seed).size(n)).expect("benchmark instances generate"))
        .collect()
}
