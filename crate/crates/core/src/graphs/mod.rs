//! Simple regular graphs and the constructions built on them.
//!
//! Every graph in the crate is a [`RegularGraph`]: a validated, immutable,
//! simple `d`-regular graph with sorted adjacency lists. Constructors record
//! how the graph was produced in a [`Construction`] so that samplers which
//! depend on the structure (gadget colorings, lifted colorings, coordinate
//! colorings) can check they were handed the right kind of graph.

mod expansion;
pub mod io;
mod lift;
mod random;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::GraphError;

pub use expansion::{
    edge_expansion_exact, subset_measures, EdgeExpansion, VertexSubsetMeasures, EXPANSION_CAP,
};
pub use lift::{search_low_lambda_signing, two_lift, SigningSearch, Signing};
pub use random::{random_regular_bipartite, random_regular_bipartite_with, BipartiteOptions};

/// Default cap on the vertex count of [`tensor_power`].
pub const TENSOR_VERTEX_CAP: usize = 1 << 16;

/// Stable fingerprint of a graph's vertex count and edge set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId([u8; 8]);

impl GraphId {
    fn of(n: usize, adjacency: &[Vec<u32>]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update((n as u64).to_le_bytes());
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &v in nbrs.iter().filter(|&&v| v as usize > u) {
                hasher.update((u as u32).to_le_bytes());
                hasher.update(v.to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        let mut id = [0u8; 8];
        id.copy_from_slice(&digest[..8]);
        GraphId(id)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() != 16 {
            return None;
        }
        let mut id = [0u8; 8];
        for (i, slot) in id.iter_mut().enumerate() {
            *slot = u8::from_str_radix(s.get(2 * i..2 * i + 2)?, 16).ok()?;
        }
        Some(GraphId(id))
    }
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphId({})", self.to_hex())
    }
}

impl Serialize for GraphId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for GraphId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        GraphId::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad graph id"))
    }
}

/// One `K_{3,3}` minus an edge spliced into base edge `x`-`y`.
///
/// `x_side[0]` and `y_side[0]` are the endpoints of the removed edge; they
/// carry the attachments to `x` and `y` respectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetBlock {
    pub x: u32,
    pub y: u32,
    pub x_side: [u32; 3],
    pub y_side: [u32; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMeta {
    pub base_n: usize,
    pub blocks: Vec<GadgetBlock>,
}

/// How a graph was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Edges,
    Complete { q: usize },
    Cycle,
    Tensor { q: usize, power: usize },
    Gadget(GadgetMeta),
    RandomBipartite { half: usize, d: usize, seed: u64 },
    TwoLift { base: GraphId },
}

/// A simple `d`-regular graph.
#[derive(Debug, Clone)]
pub struct RegularGraph {
    n: usize,
    d: usize,
    adjacency: Vec<Vec<u32>>,
    parts: Option<Vec<u8>>,
    construction: Construction,
    id: GraphId,
}

impl PartialEq for RegularGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adjacency == other.adjacency
    }
}

impl Eq for RegularGraph {}

impl RegularGraph {
    /// Validates `edges` and builds the graph; the degree is inferred.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        Self::assemble(n, edges, None, Construction::Edges)
    }

    /// Like [`RegularGraph::from_edges`] but also attaches a bipartition,
    /// which every edge must cross.
    pub fn from_edges_with_parts(
        n: usize,
        edges: &[(u32, u32)],
        parts: Vec<u8>,
    ) -> Result<Self, GraphError> {
        Self::assemble(n, edges, Some(parts), Construction::Edges)
    }

    pub(crate) fn assemble(
        n: usize,
        edges: &[(u32, u32)],
        parts: Option<Vec<u8>>,
        construction: Construction,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w as usize, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u as u32, w[0]);
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        let d = adjacency[0].len();
        if let Some((v, nbrs)) = adjacency.iter().enumerate().find(|(_, a)| a.len() != d) {
            return Err(GraphError::NonRegular {
                vertex: v as u32,
                found: nbrs.len(),
                expected: d,
            });
        }
        if let Some(parts) = &parts {
            if parts.len() != n {
                return Err(GraphError::InvalidParameter(format!(
                    "{} part labels for {n} vertices",
                    parts.len()
                )));
            }
            if let Some(&p) = parts.iter().find(|&&p| p > 1) {
                return Err(GraphError::InvalidParameter(format!("part label {p} is not 0/1")));
            }
            if let Some(&(u, v)) = edges.iter().find(|(u, v)| parts[*u as usize] == parts[*v as usize]) {
                return Err(GraphError::InvalidParameter(format!(
                    "edge {u}-{v} does not cross the bipartition"
                )));
            }
        }
        let id = GraphId::of(n, &adjacency);
        Ok(RegularGraph {
            n,
            d,
            adjacency,
            parts,
            construction,
            id,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.d / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order. The position
    /// of an edge in this sequence is its canonical edge id.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn parts(&self) -> Option<&[u8]> {
        self.parts.as_deref()
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn gadget_meta(&self) -> Option<&GadgetMeta> {
        match &self.construction {
            Construction::Gadget(meta) => Some(meta),
            _ => None,
        }
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    /// Replaces the recorded construction. Used when a graph is reloaded
    /// from a file and its provenance is known from elsewhere.
    pub fn with_construction(mut self, construction: Construction) -> Self {
        self.construction = construction;
        self
    }

    /// Connected component index of every vertex, numbered in order of
    /// first appearance.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    let v = v as usize;
                    if label[v] == usize::MAX {
                        label[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }

    /// Tries to 2-color the graph; returns part labels if bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    let v = v as usize;
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }
}

/// The complete graph `K_q`.
pub fn complete_graph(q: usize) -> Result<RegularGraph, GraphError> {
    if q < 2 {
        return Err(GraphError::InvalidParameter(format!("complete graph needs q >= 2, got {q}")));
    }
    let edges: Vec<_> = (0..q as u32)
        .flat_map(|u| (u + 1..q as u32).map(move |v| (u, v)))
        .collect();
    RegularGraph::assemble(q, &edges, None, Construction::Complete { q })
}

/// The cycle `C_n`.
pub fn cycle_graph(n: usize) -> Result<RegularGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("cycle needs at least one vertex".into()));
    }
    let edges: Vec<_> = (0..n as u32).map(|i| (i, ((i as usize + 1) % n) as u32)).collect();
    RegularGraph::assemble(n, &edges, None, Construction::Cycle)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> RegularGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    RegularGraph::assemble(10, &edges, None, Construction::Edges).expect("petersen graph is cubic")
}

/// The prism `C_k × K_2`: two `k`-cycles `0..k` and `k..2k` joined by rungs.
pub fn prism(k: usize) -> Result<RegularGraph, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameter(format!("prism needs k >= 3, got {k}")));
    }
    let k32 = k as u32;
    let edges: Vec<_> = (0..k32)
        .flat_map(|i| {
            let j = (i + 1) % k32;
            [(i, j), (k32 + i, k32 + j), (i, k32 + i)]
        })
        .collect();
    RegularGraph::assemble(2 * k, &edges, None, Construction::Edges)
}

/// Weak product power `K_q^{⊗N}` with the default size cap.
pub fn tensor_power(q: usize, power: usize) -> Result<RegularGraph, GraphError> {
    tensor_power_capped(q, power, TENSOR_VERTEX_CAP)
}

/// Vertex `id` encodes the tuple `(a_1, …, a_N)` in base `q` with `a_1` the
/// most significant digit; two tuples are adjacent iff they differ in every
/// coordinate.
pub fn tensor_power_capped(q: usize, power: usize, cap: usize) -> Result<RegularGraph, GraphError> {
    if q < 2 || power == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "tensor power needs q >= 2 and N >= 1, got q={q}, N={power}"
        )));
    }
    let size = (q as u128).checked_pow(power as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(GraphError::SizeCap { size, cap });
    }
    let n = size as usize;
    let mut edges = Vec::with_capacity(n * (q - 1).pow(power as u32) / 2);
    let mut digits = vec![0usize; power];
    // counter[i] in 0..q-1 picks the counter[i]-th value differing from digits[i]
    let mut counter = vec![0usize; power];
    for u in 0..n {
        tuple_digits(u, q, &mut digits);
        counter.iter_mut().for_each(|c| *c = 0);
        'odometer: loop {
            let v = counter
                .iter()
                .zip(&digits)
                .fold(0, |acc, (&c, &a)| acc * q + if c < a { c } else { c + 1 });
            if v > u {
                edges.push((u as u32, v as u32));
            }
            for i in (0..power).rev() {
                counter[i] += 1;
                if counter[i] < q - 1 {
                    continue 'odometer;
                }
                counter[i] = 0;
            }
            break;
        }
    }
    RegularGraph::assemble(n, &edges, None, Construction::Tensor { q, power })
}

/// Base-`q` digits of `id`, most significant first.
pub fn tuple_digits(mut id: usize, q: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = id % q;
        id /= q;
    }
}

/// Replaces every edge `xy` of a cubic graph by a `K_{3,3}` minus the edge
/// `uv`, attached through `xu` and `yv`.
///
/// Base vertices keep their ids; the gadget for the `k`-th canonical edge
/// occupies ids `N + 6k .. N + 6k + 6`, first the three vertices of the part
/// containing `u` (with `u` first), then the part containing `v`.
pub fn gadget_expand(base: &RegularGraph) -> Result<RegularGraph, GraphError> {
    if base.degree() != 3 {
        return Err(GraphError::NotCubic(base.degree()));
    }
    let base_n = base.n();
    let n = 10 * base_n;
    let mut edges = Vec::with_capacity(3 * n / 2);
    let mut blocks = Vec::with_capacity(base.edge_count());
    for (k, (x, y)) in base.edges().enumerate() {
        let start = (base_n + 6 * k) as u32;
        let x_side = [start, start + 1, start + 2];
        let y_side = [start + 3, start + 4, start + 5];
        for &a in &x_side {
            for &b in &y_side {
                if !(a == x_side[0] && b == y_side[0]) {
                    edges.push((a, b));
                }
            }
        }
        edges.push((x, x_side[0]));
        edges.push((y, y_side[0]));
        blocks.push(GadgetBlock { x, y, x_side, y_side });
    }
    let meta = GadgetMeta { base_n, blocks };
    RegularGraph::assemble(n, &edges, None, Construction::Gadget(meta))
}

/// Recovers the gadget layout of a graph produced by [`gadget_expand`]
/// (for instance after a round-trip through the text format).
pub fn recover_gadget_meta(graph: &RegularGraph) -> Result<GadgetMeta, GraphError> {
    if let Some(meta) = graph.gadget_meta() {
        return Ok(meta.clone());
    }
    let fail = |msg: String| Err(GraphError::NoGadgetStructure(msg));
    if graph.degree() != 3 || !graph.n().is_multiple_of(10) {
        return fail("expected a 3-regular graph on 10N vertices".into());
    }
    let base_n = graph.n() / 10;
    let mut blocks = Vec::with_capacity(3 * base_n / 2);
    for k in 0..3 * base_n / 2 {
        let start = (base_n + 6 * k) as u32;
        let x_side = [start, start + 1, start + 2];
        let y_side = [start + 3, start + 4, start + 5];
        let outside = |v: u32| {
            graph
                .neighbors(v as usize)
                .iter()
                .copied()
                .find(|&w| (w as usize) < base_n)
        };
        let (Some(x), Some(y)) = (outside(x_side[0]), outside(y_side[0])) else {
            return fail(format!("block {k} has no base attachments"));
        };
        for &a in &x_side {
            for &b in &y_side {
                let want = !(a == x_side[0] && b == y_side[0]);
                if graph.has_edge(a as usize, b as usize) != want {
                    return fail(format!("block {k} is not K33 minus an edge"));
                }
            }
        }
        if x >= y {
            return fail(format!("block {k} attachments are out of canonical order"));
        }
        blocks.push(GadgetBlock { x, y, x_side, y_side });
    }
    Ok(GadgetMeta { base_n, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_k4() {
        let tri = RegularGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.degree(), 2);
        assert_eq!(tri.edge_count(), 3);
        let k4 = RegularGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.degree(), 3);
        assert_eq!(k4, complete_graph(4).unwrap());
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            RegularGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]),
            Err(GraphError::NonRegular { .. })
        ));
        assert_eq!(
            RegularGraph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(RegularGraph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            RegularGraph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(RegularGraph::from_edges_with_parts(3, &[(0, 1), (1, 2), (2, 0)], vec![0, 1, 0]).is_err());
    }

    #[test]
    fn empty_graph_is_zero_regular() {
        let g = RegularGraph::from_edges(5, &[]).unwrap();
        assert_eq!(g.degree(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components().0, 5);
    }

    #[test]
    fn small_families() {
        assert_eq!(complete_graph(2).unwrap().edge_count(), 1);
        assert_eq!(complete_graph(3).unwrap().edge_count(), 3);
        assert_eq!(complete_graph(4).unwrap().edge_count(), 6);
        assert_eq!(cycle_graph(3).unwrap(), complete_graph(3).unwrap());
        assert_eq!(cycle_graph(5).unwrap().degree(), 2);
        assert_eq!(cycle_graph(2), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn tensor_powers() {
        assert_eq!(tensor_power(3, 1).unwrap(), complete_graph(3).unwrap());
        let g = tensor_power(3, 2).unwrap();
        assert_eq!((g.n(), g.degree()), (9, 4));
        // q=2: every tuple is adjacent only to its complement
        let m = tensor_power(2, 2).unwrap();
        assert_eq!((m.n(), m.degree()), (4, 1));
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
        let g = tensor_power(4, 3).unwrap();
        assert_eq!((g.n(), g.degree()), (64, 27));
        assert!(matches!(tensor_power(3, 20), Err(GraphError::SizeCap { .. })));
    }

    #[test]
    fn tensor_adjacency_matches_definition() {
        let (q, power) = (3, 3);
        let g = tensor_power(q, power).unwrap();
        let mut a = vec![0; power];
        let mut b = vec![0; power];
        for u in 0..g.n() {
            for v in 0..g.n() {
                tuple_digits(u, q, &mut a);
                tuple_digits(v, q, &mut b);
                let differ = a.iter().zip(&b).all(|(x, y)| x != y);
                assert_eq!(g.has_edge(u, v), differ, "{u} {v}");
            }
        }
    }

    #[test]
    fn gadget_over_k4() {
        let g = gadget_expand(&complete_graph(4).unwrap()).unwrap();
        assert_eq!((g.n(), g.degree(), g.edge_count()), (40, 3, 60));
        let meta = g.gadget_meta().unwrap();
        assert_eq!(meta.blocks.len(), 6);
        assert_eq!(meta.blocks[0].x_side, [4, 5, 6]);
        assert!(g.has_edge(0, 4) && g.has_edge(1, 7));
        assert!(!g.has_edge(4, 7));
        let plain = RegularGraph::from_edges(g.n(), &g.edges().collect::<Vec<_>>()).unwrap();
        assert_eq!(&recover_gadget_meta(&plain).unwrap(), meta);
    }

    #[test]
    fn gadget_needs_cubic_base() {
        assert_eq!(gadget_expand(&cycle_graph(3).unwrap()), Err(GraphError::NotCubic(2)));
        let k33 = RegularGraph::from_edges(
            6,
            &(0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect::<Vec<_>>(),
        )
        .unwrap();
        let g = gadget_expand(&k33).unwrap();
        assert_eq!((g.n(), g.degree()), (60, 3));
    }

    #[test]
    fn graph_id_hex_roundtrip() {
        let id = cycle_graph(7).unwrap().id();
        assert_eq!(GraphId::from_hex(&id.to_hex()), Some(id));
        assert_ne!(id, cycle_graph(8).unwrap().id());
    }
}
