use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Construction, RegularGraph};
use crate::error::GraphError;

/// Knobs for [`random_regular_bipartite_with`].
#[derive(Debug, Clone, Copy)]
pub struct BipartiteOptions {
    /// Whole-attempt rejections tried before falling back to repair.
    pub attempts: usize,
    /// Repair parallel edges of the last attempt by degree-preserving
    /// switches instead of failing.
    pub repair: bool,
    /// Budget of proposed switches per parallel edge during repair.
    pub switches_per_edge: usize,
}

impl Default for BipartiteOptions {
    fn default() -> Self {
        BipartiteOptions {
            attempts: 200,
            repair: true,
            switches_per_edge: 10_000,
        }
    }
}

/// Random simple `d`-regular bipartite graph on `2 * half` vertices with the
/// default [`BipartiteOptions`].
pub fn random_regular_bipartite(half: usize, d: usize, seed: u64) -> Result<RegularGraph, GraphError> {
    random_regular_bipartite_with(half, d, seed, BipartiteOptions::default())
}

/// Union of `d` uniform perfect matchings between the parts `0..half` and
/// `half..2*half`.
///
/// An attempt containing parallel edges is rejected and resampled. The
/// chance that an attempt is simple decays like `exp(-d(d-1)/2)`, so for
/// larger `d` the rejection budget runs out and the final attempt is made
/// simple by random switches `(a,b),(c,e) -> (a,e),(c,b)`, which keep every
/// degree and the bipartition. The result is then only approximately
/// uniform. Deterministic given `seed`.
pub fn random_regular_bipartite_with(
    half: usize,
    d: usize,
    seed: u64,
    opts: BipartiteOptions,
) -> Result<RegularGraph, GraphError> {
    if half == 0 {
        return Err(GraphError::InvalidParameter("parts must be nonempty".into()));
    }
    if d > half {
        return Err(GraphError::DegreeTooLarge { d, half });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..half as u32).collect();
    let mut edges = Vec::with_capacity(half * d);
    let mut counts: HashMap<(u32, u32), u32> = HashMap::with_capacity(half * d);
    for _ in 0..opts.attempts.max(1) {
        edges.clear();
        counts.clear();
        let mut simple = true;
        for _ in 0..d {
            perm.shuffle(&mut rng);
            for (a, &b) in perm.iter().enumerate() {
                let e = (a as u32, half as u32 + b);
                let c = counts.entry(e).or_insert(0);
                *c += 1;
                simple &= *c == 1;
                edges.push(e);
            }
        }
        if simple {
            return finish(half, d, seed, &edges);
        }
    }
    if !opts.repair {
        return Err(GraphError::GenerationTimeout(opts.attempts));
    }

    let mut seen = HashMap::with_capacity(edges.len());
    let mut dups: Vec<usize> = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if seen.insert(*e, i).is_some() {
            dups.push(i);
        }
    }
    let budget = opts.switches_per_edge.max(1) * dups.len().max(1);
    let mut proposals = 0usize;
    while let Some(&i) = dups.last() {
        let (a, b) = edges[i];
        if counts[&(a, b)] <= 1 {
            dups.pop();
            continue;
        }
        if proposals >= budget {
            return Err(GraphError::GenerationTimeout(opts.attempts));
        }
        proposals += 1;
        let j = rng.random_range(0..edges.len());
        let (c, e) = edges[j];
        if c == a || e == b {
            continue;
        }
        if counts.get(&(a, e)).copied().unwrap_or(0) > 0 || counts.get(&(c, b)).copied().unwrap_or(0) > 0 {
            continue;
        }
        for (pair, delta) in [((a, b), -1i64), ((c, e), -1), ((a, e), 1), ((c, b), 1)] {
            let slot = counts.entry(pair).or_insert(0);
            *slot = (*slot as i64 + delta) as u32;
        }
        edges[i] = (a, e);
        edges[j] = (c, b);
        dups.pop();
    }
    finish(half, d, seed, &edges)
}

fn finish(half: usize, d: usize, seed: u64, edges: &[(u32, u32)]) -> Result<RegularGraph, GraphError> {
    let parts = (0..2 * half).map(|v| u8::from(v >= half)).collect();
    RegularGraph::assemble(
        2 * half,
        edges,
        Some(parts),
        Construction::RandomBipartite { half, d, seed },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_when_degree_one() {
        let g = random_regular_bipartite(4, 1, 3).unwrap();
        assert_eq!((g.n(), g.degree(), g.edge_count()), (8, 1, 4));
    }

    #[test]
    fn degree_above_part_size() {
        assert_eq!(
            random_regular_bipartite(2, 3, 0),
            Err(GraphError::DegreeTooLarge { d: 3, half: 2 })
        );
    }

    #[test]
    fn seeded_and_bipartite() {
        let g = random_regular_bipartite(100, 3, 7).unwrap();
        assert_eq!((g.n(), g.degree()), (200, 3));
        let parts = g.parts().unwrap();
        assert!(g.edges().all(|(u, v)| parts[u as usize] != parts[v as usize]));
        assert_eq!(g, random_regular_bipartite(100, 3, 7).unwrap());
        assert_ne!(g, random_regular_bipartite(100, 3, 8).unwrap());
    }

    #[test]
    fn dense_degree_needs_repair() {
        let opts = BipartiteOptions {
            attempts: 5,
            repair: false,
            ..Default::default()
        };
        assert!(matches!(
            random_regular_bipartite_with(100, 25, 1, opts),
            Err(GraphError::GenerationTimeout(5))
        ));
        let g = random_regular_bipartite(100, 25, 1).unwrap();
        assert_eq!(g.degree(), 25);
    }

    #[test]
    fn complete_bipartite_is_reachable() {
        let g = random_regular_bipartite(5, 5, 11).unwrap();
        assert_eq!(g.edge_count(), 25);
    }
}
