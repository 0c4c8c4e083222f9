//! Shared fixtures for the benchmarks.

use crescent_core::constructors::published_linf;
use crescent_core::predicates::Configuration;
use crescent_core::search::{LatticeSpec, SearchMode, SearchParams};
use crescent_core::NormSpec;

/// The published size-8 set under `L^inf`.
pub fn table_eight() -> Configuration {
    published_linf(8).expect("size 8 is published")
}

/// Integer points of a `k` by `k` block, for predicate loops.
pub fn grid_points(k: i64) -> Vec<(i64, i64)> {
    (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect()
}

pub fn linf_search(w: usize, h: usize, n: usize, mode: SearchMode) -> SearchParams {
    let mut p = SearchParams::new(LatticeSpec::square(w, h), NormSpec::Linf, n, mode);
    p.threads = 1;
    p
}
