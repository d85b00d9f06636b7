//! Vertex colorings and the permutation-invariant distance between them.
//!
//! Colors are 0-indexed. The distance between colorings `X` and `Y` of the
//! same graph is `n` minus the best agreement `Σ_b M[σ(b)][b]` over
//! relabelings `σ` of `Y`'s colors, where `M` is the [`AgreementMatrix`].
//! That maximization is an assignment problem on a `q × q` matrix, solved
//! either by trying all `q!` relabelings or by the Hungarian method; both
//! return the lexicographically smallest optimal `σ`.

pub mod assignment;
mod enumerate;
mod samplers;

use serde::{Deserialize, Serialize};

use crate::error::ColoringError;
use crate::graphs::{GraphId, RegularGraph};

pub use enumerate::{count_proper, enumerate_proper, enumerate_proper_with, EnumerateLimits};
pub use samplers::{
    coordinate_colorings, gadget_coloring_from_base, layered_bipartite_pair, lift_coloring,
    sample_bipartite_biased, sample_gadget_coloring, sample_random_greedy,
};

pub type Color = u16;

/// Largest palette for which [`DistanceMethod::Auto`] enumerates all
/// relabelings.
pub const BRUTE_FORCE_MAX_Q: usize = 8;

/// A map from the vertices of one graph to `[0, q)`. Properness is checked
/// separately by [`is_proper`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    q: usize,
    colors: Vec<Color>,
    graph: GraphId,
}

impl Coloring {
    pub fn new(graph: &RegularGraph, q: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        let coloring = Coloring {
            q,
            colors,
            graph: graph.id(),
        };
        coloring.check_against(graph)?;
        Ok(coloring)
    }

    pub(crate) fn new_unchecked(graph: GraphId, q: usize, colors: Vec<Color>) -> Self {
        Coloring { q, colors, graph }
    }

    /// Checks binding, length and palette; used after deserializing.
    pub fn check_against(&self, graph: &RegularGraph) -> Result<(), ColoringError> {
        if self.graph != graph.id() {
            return Err(ColoringError::BindingMismatch(format!(
                "coloring is bound to {}, graph is {}",
                self.graph,
                graph.id()
            )));
        }
        if self.colors.len() != graph.n() {
            return Err(ColoringError::BindingMismatch(format!(
                "{} colors for {} vertices",
                self.colors.len(),
                graph.n()
            )));
        }
        self.check_palette()
    }

    fn check_palette(&self) -> Result<(), ColoringError> {
        if self.q > Color::MAX as usize + 1 || self.q == 0 {
            return Err(ColoringError::InvalidQ {
                needed: format!("1 <= q <= {}", Color::MAX as usize + 1),
                found: self.q,
            });
        }
        match self.colors.iter().position(|&c| c as usize >= self.q) {
            Some(v) => Err(ColoringError::InvalidColor {
                vertex: v,
                color: self.colors[v] as u32,
                q: self.q,
            }),
            None => Ok(()),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    /// `σ ∘ X`, where `sigma[c]` is the new name of color `c`.
    pub fn relabel(&self, sigma: &[Color]) -> Result<Coloring, ColoringError> {
        if !is_permutation(sigma, self.q) {
            return Err(ColoringError::InvalidQ {
                needed: format!("a permutation of [0, {})", self.q),
                found: sigma.len(),
            });
        }
        Ok(Coloring {
            q: self.q,
            colors: self.colors.iter().map(|&c| sigma[c as usize]).collect(),
            graph: self.graph,
        })
    }

    fn check_pair(&self, other: &Coloring) -> Result<(), ColoringError> {
        if self.graph != other.graph || self.colors.len() != other.colors.len() {
            return Err(ColoringError::BindingMismatch(format!(
                "colorings of {} and {}",
                self.graph, other.graph
            )));
        }
        if self.q != other.q {
            return Err(ColoringError::BindingMismatch(format!(
                "palettes of size {} and {}",
                self.q, other.q
            )));
        }
        Ok(())
    }
}

fn is_permutation(sigma: &[Color], q: usize) -> bool {
    let mut seen = vec![false; q];
    sigma.len() == q
        && sigma.iter().all(|&c| {
            let c = c as usize;
            c < q && !std::mem::replace(&mut seen[c], true)
        })
}

/// First monochromatic edge in canonical edge order, if any.
pub fn first_violation(graph: &RegularGraph, coloring: &Coloring) -> Result<Option<(u32, u32)>, ColoringError> {
    coloring.check_against(graph)?;
    let c = coloring.colors();
    Ok(graph.edges().find(|&(u, v)| c[u as usize] == c[v as usize]))
}

pub fn is_proper(graph: &RegularGraph, coloring: &Coloring) -> Result<bool, ColoringError> {
    Ok(first_violation(graph, coloring)?.is_none())
}

/// `counts[a * q + b] = #{v : X(v) = a, Y(v) = b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementMatrix {
    q: usize,
    counts: Vec<u64>,
}

impl AgreementMatrix {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.counts[a * self.q + b]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Weight of relabeling `Y`'s color `b` to `a`, as a row-major matrix
    /// indexed `[b][a]`.
    fn relabel_weights(&self) -> Vec<Vec<i64>> {
        (0..self.q)
            .map(|b| (0..self.q).map(|a| self.get(a, b) as i64).collect())
            .collect()
    }
}

pub fn agreement_matrix(x: &Coloring, y: &Coloring) -> Result<AgreementMatrix, ColoringError> {
    x.check_pair(y)?;
    let q = x.q();
    let mut counts = vec![0u64; q * q];
    for (&a, &b) in x.colors().iter().zip(y.colors()) {
        counts[a as usize * q + b as usize] += 1;
    }
    Ok(AgreementMatrix { q, counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMethod {
    /// Enumerate relabelings when `q <= 8`, otherwise solve the assignment.
    #[default]
    Auto,
    BruteForce,
    Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distance {
    /// `min_σ #{v : X(v) ≠ σ(Y(v))}`
    pub distance: usize,
    /// Lexicographically smallest optimal relabeling: `Y`'s color `b` is
    /// renamed `sigma[b]`.
    pub sigma: Vec<Color>,
}

pub fn distance(x: &Coloring, y: &Coloring) -> Result<Distance, ColoringError> {
    distance_with(x, y, DistanceMethod::Auto)
}

pub fn distance_with(x: &Coloring, y: &Coloring, method: DistanceMethod) -> Result<Distance, ColoringError> {
    let m = agreement_matrix(x, y)?;
    Ok(distance_from_agreement(&m, method))
}

pub fn distance_from_agreement(m: &AgreementMatrix, method: DistanceMethod) -> Distance {
    let weights = m.relabel_weights();
    let brute = match method {
        DistanceMethod::Auto => m.q() <= BRUTE_FORCE_MAX_Q,
        DistanceMethod::BruteForce => true,
        DistanceMethod::Assignment => false,
    };
    let (agree, perm) = if brute {
        assignment::max_assignment_brute_force(&weights)
    } else {
        assignment::max_assignment_lexicographic(&weights)
    };
    Distance {
        distance: (m.total() as i64 - agree) as usize,
        sigma: perm.into_iter().map(|a| a as Color).collect(),
    }
}

/// Plain Hamming distance, no relabeling.
pub fn hamming(x: &Coloring, y: &Coloring) -> Result<usize, ColoringError> {
    x.check_pair(y)?;
    Ok(x.colors().iter().zip(y.colors()).filter(|(a, b)| a != b).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, tensor_power};

    #[test]
    fn properness() {
        let k3 = complete_graph(3).unwrap();
        let good = Coloring::new(&k3, 3, vec![0, 1, 2]).unwrap();
        assert!(is_proper(&k3, &good).unwrap());
        let bad = Coloring::new(&k3, 3, vec![0, 0, 1]).unwrap();
        assert_eq!(first_violation(&k3, &bad).unwrap(), Some((0, 1)));
        let c5 = cycle_graph(5).unwrap();
        assert!(is_proper(&c5, &Coloring::new(&c5, 3, vec![0, 1, 0, 1, 2]).unwrap()).unwrap());
        assert!(matches!(
            is_proper(&c5, &good),
            Err(ColoringError::BindingMismatch(_))
        ));
    }

    #[test]
    fn construction_checks_palette() {
        let k3 = complete_graph(3).unwrap();
        assert!(matches!(
            Coloring::new(&k3, 2, vec![0, 1, 2]),
            Err(ColoringError::InvalidColor { vertex: 2, .. })
        ));
        assert!(Coloring::new(&k3, 3, vec![0, 1]).is_err());
    }

    #[test]
    fn agreement_examples() {
        let g = RegularGraph::from_edges(2, &[]).unwrap();
        let x = Coloring::new(&g, 3, vec![0, 0]).unwrap();
        let y = Coloring::new(&g, 3, vec![1, 2]).unwrap();
        let m = agreement_matrix(&x, &y).unwrap();
        assert_eq!((m.get(0, 1), m.get(0, 2), m.total()), (1, 1, 2));
        let same = agreement_matrix(&x, &x).unwrap();
        assert_eq!(same.get(0, 0), 2);
    }

    #[test]
    fn coordinate_agreement_is_all_ones() {
        let g = tensor_power(3, 2).unwrap();
        let xs = coordinate_colorings(&g).unwrap();
        let m = agreement_matrix(&xs[0], &xs[1]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(m.get(a, b), 1);
            }
        }
        assert_eq!(distance(&xs[0], &xs[1]).unwrap().distance, 6);
    }

    #[test]
    fn distance_to_self_is_zero_with_identity() {
        let c5 = cycle_graph(5).unwrap();
        let x = Coloring::new(&c5, 3, vec![0, 1, 0, 1, 2]).unwrap();
        let d = distance(&x, &x).unwrap();
        assert_eq!(d, Distance { distance: 0, sigma: vec![0, 1, 2] });
        let y = x.relabel(&[2, 0, 1]).unwrap();
        let d = distance(&x, &y).unwrap();
        assert_eq!(d.distance, 0);
        assert_eq!(y.relabel(&d.sigma).unwrap(), x);
        assert_eq!(hamming(&x, &y).unwrap(), 5);
    }

    #[test]
    fn brute_force_and_assignment_agree_on_ties() {
        let g = RegularGraph::from_edges(6, &[]).unwrap();
        let x = Coloring::new(&g, 4, vec![0, 1, 2, 3, 0, 1]).unwrap();
        let y = Coloring::new(&g, 4, vec![1, 1, 0, 0, 2, 3]).unwrap();
        let a = distance_with(&x, &y, DistanceMethod::BruteForce).unwrap();
        let b = distance_with(&x, &y, DistanceMethod::Assignment).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let k3 = complete_graph(3).unwrap();
        let x = Coloring::new(&k3, 3, vec![0, 1, 2]).unwrap();
        assert!(x.relabel(&[0, 0, 1]).is_err());
        assert!(x.relabel(&[0, 1]).is_err());
    }
}
