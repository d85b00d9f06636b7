//! Fixtures shared by the benchmarks.

use chroma_core::colorings::sample_bipartite_biased;
use chroma_core::graphs::{random_regular_bipartite, RegularGraph};
use chroma_core::Coloring;

/// A random cubic bipartite graph with parts of `half` and two biased
/// colorings of it.
pub fn bipartite_pair(half: usize, q: usize, seed: u64) -> (RegularGraph, Coloring, Coloring) {
    let g = random_regular_bipartite(half, 3, seed).expect("valid parameters");
    let x = sample_bipartite_biased(&g, q, 0.2, seed).expect("bipartite graph");
    let y = sample_bipartite_biased(&g, q, 0.2, seed + 1).expect("bipartite graph");
    (g, x, y)
}
