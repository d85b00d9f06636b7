//! Exact maximum clique by branch and bound.
//!
//! Vertices are renumbered so that a smallest-last (degeneracy) order is
//! scanned first-to-last; candidate sets are bitsets. At each node the
//! candidates are greedily colored and a branch is pruned once the current
//! clique plus the number of colors left cannot beat the incumbent.

/// Undirected graph as adjacency bitsets.
#[derive(Debug, Clone)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Smallest-last order: repeatedly remove a vertex of minimum remaining
/// degree (lowest id on ties); returns the removal sequence reversed.
fn degeneracy_order(g: &BitGraph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        seq.push(v);
        for w in 0..n {
            if !removed[w] && g.has_edge(v, w) {
                deg[w] -= 1;
            }
        }
    }
    seq.reverse();
    seq
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, candidates: Vec<u64>) {
        let (order, colors) = self.color_candidates(&candidates);
        let mut p = candidates;
        for k in (0..order.len()).rev() {
            if self.current.len() + colors[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            self.current.push(v);
            let next: Vec<u64> = p.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Greedy sequential coloring; returns vertices sorted by color class
    /// and, for each, the number of the class it landed in (1-based).
    fn color_candidates(&self, candidates: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = candidates.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut class = 0;
        while uncolored.iter().any(|&w| w != 0) {
            class += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                uncolored[v / 64] &= !(1 << (v % 64));
                q[v / 64] &= !(1 << (v % 64));
                for (a, b) in q.iter_mut().zip(self.g.row(v)) {
                    *a &= !b;
                }
                order.push(v);
                colors.push(class);
            }
        }
        (order, colors)
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + words[i].trailing_zeros() as usize)
}

/// A maximum clique, as sorted vertex ids.
pub fn max_clique(g: &BitGraph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let order = degeneracy_order(g);
    let mut relabeled = BitGraph::new(n);
    for (i, &u) in order.iter().enumerate() {
        for (j, &v) in order.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                relabeled.add_edge(i, j);
            }
        }
    }
    let mut all = vec![0u64; relabeled.words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut search = Search {
        g: &relabeled,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.expand(all);
    let mut clique: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    clique
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(g: &BitGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|u| (u + 1..n).all(|v| m >> u & 1 == 0 || m >> v & 1 == 0 || g.has_edge(u, v)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn random_graphs_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..200 {
            let n = 1 + trial % 14;
            let p = rng.random_range(0.1..0.9);
            let mut g = BitGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let c = max_clique(&g);
            assert_eq!(c.len(), brute_force(&g));
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn wide_graph_crosses_word_boundary() {
        let mut g = BitGraph::new(130);
        for &(u, v) in &[(0, 64), (0, 129), (64, 129), (5, 6)] {
            g.add_edge(u, v);
        }
        assert_eq!(max_clique(&g), vec![0, 64, 129]);
        assert_eq!(max_clique(&BitGraph::new(3)).len(), 1);
    }
}
