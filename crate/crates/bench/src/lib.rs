//! Fixtures shared by the criterion benchmarks.

use localds::generate;
use localds::Graph;

/// 1000 nodes, 20000 random edges.
pub fn dense_1000(seed: u64) -> Graph {
    generate::gnm(seed, 1000, 20_000)
}

/// Sparse graph large enough for per-round costs to dominate.
pub fn sparse(seed: u64, n: usize) -> Graph {
    generate::gnm(seed, n, n * 4)
}
