use serde::Serialize;

use super::RegularGraph;
use crate::error::GraphError;

/// Largest vertex count accepted by [`edge_expansion_exact`].
pub const EXPANSION_CAP: usize = 24;

/// Exact edge expansion `h(G) = min |E(S, V∖S)| / |S|` over `0 < |S| <= n/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeExpansion {
    pub h: f64,
    /// Crossing edges of the witness.
    pub cut: usize,
    /// Size of the witness.
    pub size: usize,
    pub witness: Vec<u32>,
}

/// Enumerates all subsets in Gray-code order, updating the cut size in O(1)
/// per step. The first minimizer met in that order is returned.
pub fn edge_expansion_exact(graph: &RegularGraph) -> Result<EdgeExpansion, GraphError> {
    let n = graph.n();
    if n > EXPANSION_CAP {
        return Err(GraphError::TooLarge { n, cap: EXPANSION_CAP });
    }
    if n < 2 {
        return Err(GraphError::InvalidParameter("edge expansion needs at least two vertices".into()));
    }
    let d = graph.degree() as i64;
    let masks: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let half = n / 2;
    let mut set = 0u32;
    let mut size = 0usize;
    let mut cut = 0i64;
    let mut best: Option<(i64, usize, u32)> = None;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let inside = (masks[v] & set).count_ones() as i64;
        if set >> v & 1 == 0 {
            set |= 1 << v;
            size += 1;
            cut += d - 2 * inside;
        } else {
            set &= !(1 << v);
            size -= 1;
            cut -= d - 2 * inside;
        }
        if size == 0 || size > half {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, bs, _)) => cut * (bs as i64) < bc * (size as i64),
        };
        if better {
            best = Some((cut, size, set));
        }
    }
    let (cut, size, set) = best.expect("n >= 2 leaves a singleton candidate");
    Ok(EdgeExpansion {
        h: cut as f64 / size as f64,
        cut: cut as usize,
        size,
        witness: (0..n as u32).filter(|&v| set >> v & 1 == 1).collect(),
    })
}

/// Normalized measures of a vertex set `A` (and optionally a second set `B`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexSubsetMeasures {
    /// `|A| / |V|`
    pub w: f64,
    /// `|E(A)| / |E|`
    pub e_within: f64,
    /// `|E(A, B)| / |E|`, with `B = V ∖ A` when no second set is given.
    pub e_cross: f64,
    pub size: usize,
    pub edges_within: usize,
    pub edges_cross: usize,
    pub total_edges: usize,
}

/// Exact edge counts behind `w(A)`, `e(A)` and `e(A, B)`. For a 0-regular
/// graph the edge fractions are reported as 0.
pub fn subset_measures(
    graph: &RegularGraph,
    a: &[u32],
    b: Option<&[u32]>,
) -> Result<VertexSubsetMeasures, GraphError> {
    let n = graph.n();
    let mut tag = vec![0u8; n];
    for &v in a {
        let slot = tag
            .get_mut(v as usize)
            .ok_or(GraphError::VertexOutOfRange { vertex: v as usize, n })?;
        *slot = 1;
    }
    match b {
        Some(b) => {
            for &v in b {
                let slot = tag
                    .get_mut(v as usize)
                    .ok_or(GraphError::VertexOutOfRange { vertex: v as usize, n })?;
                if *slot == 1 {
                    return Err(GraphError::Overlap(v));
                }
                *slot = 2;
            }
        }
        None => tag.iter_mut().filter(|t| **t == 0).for_each(|t| *t = 2),
    }
    let (mut within, mut cross) = (0usize, 0usize);
    for (u, v) in graph.edges() {
        match (tag[u as usize], tag[v as usize]) {
            (1, 1) => within += 1,
            (1, 2) | (2, 1) => cross += 1,
            _ => {}
        }
    }
    let size = tag.iter().filter(|&&t| t == 1).count();
    let total = graph.edge_count();
    let frac = |k: usize| if total == 0 { 0.0 } else { k as f64 / total as f64 };
    Ok(VertexSubsetMeasures {
        w: size as f64 / n as f64,
        e_within: frac(within),
        e_cross: frac(cross),
        size,
        edges_within: within,
        edges_cross: cross,
        total_edges: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph};

    fn brute_force_h(g: &RegularGraph) -> (usize, usize) {
        let n = g.n();
        let mut best = (usize::MAX, 1usize);
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size > n / 2 {
                continue;
            }
            let cut = g
                .edges()
                .filter(|&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count();
            if cut * best.1 < best.0.saturating_mul(size) {
                best = (cut, size);
            }
        }
        best
    }

    #[test]
    fn k4_and_c6() {
        let k4 = edge_expansion_exact(&complete_graph(4).unwrap()).unwrap();
        assert_eq!(k4.h, 2.0);
        let c6 = edge_expansion_exact(&cycle_graph(6).unwrap()).unwrap();
        assert!((c6.h - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!((c6.cut, c6.size), (2, 3));
    }

    #[test]
    fn disconnected_has_zero_expansion() {
        let g = RegularGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let h = edge_expansion_exact(&g).unwrap();
        assert_eq!(h.h, 0.0);
        assert_eq!(h.size, 3);
    }

    #[test]
    fn gray_code_agrees_with_brute_force() {
        for n in 5..12 {
            let g = cycle_graph(n).unwrap();
            let h = edge_expansion_exact(&g).unwrap();
            let (cut, size) = brute_force_h(&g);
            assert_eq!(h.cut * size, cut * h.size, "C{n}");
        }
        let petersen = crate::graphs::petersen();
        let h = edge_expansion_exact(&petersen).unwrap();
        let (cut, size) = brute_force_h(&petersen);
        assert_eq!(h.cut * size, cut * h.size);
        assert_eq!(h.h, 1.0);
    }

    #[test]
    fn too_large() {
        assert!(matches!(
            edge_expansion_exact(&cycle_graph(25).unwrap()),
            Err(GraphError::TooLarge { n: 25, cap: 24 })
        ));
    }

    #[test]
    fn measures_on_k4() {
        let k4 = complete_graph(4).unwrap();
        let m = subset_measures(&k4, &[0, 1], None).unwrap();
        assert_eq!(m.w, 0.5);
        assert!((m.e_within - 1.0 / 6.0).abs() < 1e-15);
        assert!((m.e_cross - 4.0 / 6.0).abs() < 1e-15);
        let all = subset_measures(&k4, &[0, 1, 2, 3], None).unwrap();
        assert_eq!((all.w, all.e_within, all.e_cross), (1.0, 1.0, 0.0));
        let none = subset_measures(&k4, &[], None).unwrap();
        assert_eq!((none.w, none.e_within, none.e_cross), (0.0, 0.0, 0.0));
        assert_eq!(subset_measures(&k4, &[0, 1], Some(&[1, 2])), Err(GraphError::Overlap(1)));
        let ab = subset_measures(&k4, &[0], Some(&[1, 2])).unwrap();
        assert_eq!(ab.edges_cross, 2);
    }
}
