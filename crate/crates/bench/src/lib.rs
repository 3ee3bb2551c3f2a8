//! Shared setup for the benchmarks.

use std::sync::Arc;

use minfaith_core::chain_ring::{ChainRing, Ramification};

/// Rings the benchmarks sweep over, labelled for criterion ids.
pub fn bench_rings() -> Vec<(&'static str, Arc<ChainRing>)> {
    [
        ("F5", 5, 1, Ramification::Finite(1), 1),
        ("Z/9", 3, 1, Ramification::Finite(1), 2),
        ("F2[t]/t^3", 2, 1, Ramification::Infinite, 3),
        ("GR(4,2)", 2, 2, Ramification::Finite(1), 2),
    ]
    .into_iter()
    .map(|(name, p, f, e, n)| (name, Arc::new(ChainRing::new(p, f, e, n).expect("valid ring"))))
    .collect()
}
