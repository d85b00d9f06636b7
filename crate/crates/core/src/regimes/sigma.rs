use std::collections::HashMap;

use serde::Serialize;

use crate::colorings::assignment::next_permutation;
use crate::colorings::{distance, Color, Coloring};
use crate::error::RegimeError;
use crate::graphs::RegularGraph;
use crate::spectral::{self, DENSE_TOL};

/// Largest palette for which all `q!` relabelings are profiled.
pub const SIGMA_MAX_Q: usize = 8;

/// Slack on the spectral side of the crossing-edge inequality.
const SPECTRAL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaEntry {
    pub sigma: Vec<Color>,
    /// `|V_σ|` where `V_σ = {v : X(v) = σ(Y(v))}`
    pub size: usize,
    pub crossing: usize,
    pub w: f64,
    pub e_cross: f64,
    /// `2(1 - λ₂)(w - w²)`
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaProfile {
    pub lambda2: f64,
    /// One entry per permutation, in lexicographic order.
    pub entries: Vec<SigmaEntry>,
    pub all_hold: bool,
    pub distance: usize,
    /// `d(X, Y) = n - max_σ |V_σ|`
    pub distance_matches: bool,
    /// `Σ_σ |E(V_σ, V̄_σ)|`; equals `2(q-2)(q-2)! |E|` when both colorings
    /// are proper.
    pub crossing_total: u128,
}

impl SigmaProfile {
    /// `Σ_i |V_{π^i σ}|` for the cyclic shift `π: c ↦ c + 1 (mod q)`, one
    /// value per entry. Every vertex lies in exactly one set of each orbit,
    /// so each sum is `n`.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let q = self.entries.first().map_or(0, |e| e.sigma.len());
        let index: HashMap<&[Color], usize> = self
            .entries
            .iter()
            .map(|e| (e.sigma.as_slice(), e.size))
            .collect();
        self.entries
            .iter()
            .map(|e| {
                (0..q)
                    .map(|i| {
                        let shifted: Vec<Color> = e.sigma.iter().map(|&c| ((c as usize + i) % q) as Color).collect();
                        index[shifted.as_slice()]
                    })
                    .sum()
            })
            .collect()
    }
}

/// Profile with `λ₂` computed from `graph`.
pub fn sigma_profile(graph: &RegularGraph, x: &Coloring, y: &Coloring) -> Result<SigmaProfile, RegimeError> {
    let lambda2 = spectral::lambda2(graph, DENSE_TOL)?;
    sigma_profile_with(graph, x, y, lambda2)
}

/// Measures `w(V_σ)` and `e(V_σ, V̄_σ)` for every `σ` and checks
/// `e(V_σ, V̄_σ) >= 2(1 - λ₂)(w - w²)`.
///
/// Vertices are grouped by their color pair `(X(v), Y(v))` and edges by the
/// pair of endpoint types, so each `σ` costs at most `q⁴` operations.
pub fn sigma_profile_with(
    graph: &RegularGraph,
    x: &Coloring,
    y: &Coloring,
    lambda2: f64,
) -> Result<SigmaProfile, RegimeError> {
    x.check_against(graph)?;
    y.check_against(graph)?;
    let q = x.q();
    if q > SIGMA_MAX_Q {
        return Err(RegimeError::QTooLarge(q));
    }
    if y.q() != q {
        return Err(crate::error::ColoringError::BindingMismatch("palettes differ".into()).into());
    }
    let n = graph.n();
    let total_edges = graph.edge_count();
    let kind = |v: usize| x.color(v) as usize * q + y.color(v) as usize;
    let mut vertex_types = vec![0usize; q * q];
    for v in 0..n {
        vertex_types[kind(v)] += 1;
    }
    let mut edge_types: HashMap<(usize, usize), usize> = HashMap::new();
    for (u, v) in graph.edges() {
        let (a, b) = (kind(u as usize), kind(v as usize));
        *edge_types.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let mut edge_types: Vec<((usize, usize), usize)> = edge_types.into_iter().collect();
    edge_types.sort_unstable();

    let mut perm: Vec<usize> = (0..q).collect();
    let mut entries = Vec::new();
    let mut inside = vec![false; q * q];
    loop {
        for a in 0..q {
            for b in 0..q {
                inside[a * q + b] = perm[b] == a;
            }
        }
        let size: usize = (0..q * q).filter(|&t| inside[t]).map(|t| vertex_types[t]).sum();
        let crossing: usize = edge_types
            .iter()
            .filter(|((s, t), _)| inside[*s] != inside[*t])
            .map(|(_, c)| c)
            .sum();
        let w = size as f64 / n as f64;
        let e_cross = if total_edges == 0 { 0.0 } else { crossing as f64 / total_edges as f64 };
        let bound = 2.0 * (1.0 - lambda2) * (w - w * w);
        entries.push(SigmaEntry {
            sigma: perm.iter().map(|&c| c as Color).collect(),
            size,
            crossing,
            w,
            e_cross,
            bound,
            holds: e_cross >= bound - SPECTRAL_SLACK,
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let best = entries.iter().map(|e| e.size).max().unwrap_or(0);
    let dist = distance(x, y)?.distance;
    Ok(SigmaProfile {
        lambda2,
        all_hold: entries.iter().all(|e| e.holds),
        distance: dist,
        distance_matches: dist == n - best,
        crossing_total: entries.iter().map(|e| e.crossing as u128).sum(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{coordinate_colorings, enumerate_proper, layered_bipartite_pair};
    use crate::graphs::{cycle_graph, random_regular_bipartite, tensor_power};

    fn factorial(k: usize) -> u128 {
        (1..=k as u128).product()
    }

    #[test]
    fn identical_colorings() {
        let c5 = cycle_graph(5).unwrap();
        let x = &enumerate_proper(&c5, 3).unwrap()[0];
        let p = sigma_profile(&c5, x, x).unwrap();
        assert_eq!(p.entries[0].sigma, vec![0, 1, 2]);
        assert_eq!((p.entries[0].w, p.entries[0].e_cross), (1.0, 0.0));
        assert!(p.all_hold && p.distance_matches && p.distance == 0);
    }

    #[test]
    fn layered_pair_profile() {
        let g = random_regular_bipartite(10, 3, 2).unwrap();
        let (x, y) = layered_bipartite_pair(&g, 3).unwrap();
        let p = sigma_profile(&g, &x, &y).unwrap();
        let best = p.entries.iter().map(|e| e.w).fold(0.0, f64::max);
        assert_eq!(best, 0.5);
        assert_eq!(p.distance, 10);
        assert!(p.all_hold && p.distance_matches);
    }

    #[test]
    fn tensor_pairs_and_identities() {
        let g = tensor_power(3, 2).unwrap();
        let xs = coordinate_colorings(&g).unwrap();
        let p = sigma_profile(&g, &xs[0], &xs[1]).unwrap();
        assert!((p.lambda2 - 0.25).abs() < 1e-9);
        assert_eq!(p.entries.len(), 6);
        assert!(p.all_hold && p.distance_matches);
        assert!(p.orbit_sizes().iter().all(|&s| s == 9));
        let q = 3;
        assert_eq!(p.crossing_total, 2 * (q - 2) as u128 * factorial(q - 2) * g.edge_count() as u128);
    }

    #[test]
    fn large_palette_rejected() {
        let g = random_regular_bipartite(9, 2, 1).unwrap();
        let x = crate::colorings::Coloring::new(&g, 9, (0..18).map(|v| (v % 9) as Color).collect()).unwrap();
        assert_eq!(sigma_profile_with(&g, &x, &x, 0.5), Err(RegimeError::QTooLarge(9)));
    }
}
