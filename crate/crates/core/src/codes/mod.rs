//! Sets of proper colorings with a guaranteed pairwise distance.
//!
//! A set is δ-distinct when every pair is at distance at least `⌈δn⌉`. The
//! threshold is computed exactly from a rational δ.

pub mod clique;
mod families;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colorings::{
    distance, enumerate_proper_with, is_proper, sample_bipartite_biased, sample_gadget_coloring,
    sample_random_greedy,
    Coloring, EnumerateLimits,
};
use crate::error::{CodeError, ColoringError};
use crate::graphs::RegularGraph;
use crate::rational::{ceil_times, Fraction};
use crate::seeds::derive_seed;

pub use families::{empirical_f, Family, FamilyConfig, FamilyRow, Instance};

/// Largest number of proper colorings [`exact_max_packing`] will enumerate.
pub const CLIQUE_CAP: usize = 2000;

/// Where the members of a code came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub sampler: String,
    pub seed: Option<u64>,
    /// Samples drawn, or colorings considered.
    pub draws: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSet {
    pub members: Vec<Coloring>,
    #[serde(with = "crate::rational::as_string")]
    pub delta: Fraction,
    /// Minimum pairwise distance, `None` below two members.
    pub min_dist: Option<usize>,
    pub provenance: Provenance,
}

impl CodeSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.members.first().map_or(0, Coloring::len)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaCheck {
    pub ok: bool,
    /// `⌈δn⌉`
    pub threshold: i64,
    pub min_dist: Option<usize>,
    pub worst_pair: Option<(usize, usize)>,
}

/// All-pairs check of the distance promise.
pub fn verify_delta_distinct(code: &CodeSet) -> Result<DeltaCheck, CodeError> {
    let first = code.members.first().ok_or(CodeError::Empty)?;
    if code
        .members
        .iter()
        .any(|x| x.graph_id() != first.graph_id() || x.q() != first.q() || x.len() != first.len())
    {
        return Err(CodeError::MixedBinding);
    }
    let threshold = ceil_times(&code.delta, first.len());
    let worst = min_pairwise(&code.members)?;
    Ok(DeltaCheck {
        ok: worst.is_none_or(|(d, _, _)| d as i64 >= threshold),
        threshold,
        min_dist: worst.map(|w| w.0),
        worst_pair: worst.map(|(_, i, j)| (i, j)),
    })
}

/// Smallest `(distance, i, j)` over pairs `i < j`.
fn min_pairwise(members: &[Coloring]) -> Result<Option<(usize, usize, usize)>, ColoringError> {
    let k = members.len();
    (0..k)
        .into_par_iter()
        .map(|i| {
            let mut best: Option<(usize, usize, usize)> = None;
            for j in i + 1..k {
                let d = distance(&members[i], &members[j])?.distance;
                if best.is_none_or(|b| (d, i, j) < b) {
                    best = Some((d, i, j));
                }
            }
            Ok(best)
        })
        .try_reduce(|| None, |a, b| Ok(a.into_iter().chain(b).min()))
}

/// Source of candidate colorings for [`greedy_pack`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Sampler {
    /// Gadget sampler on a graph built by gadget expansion.
    Gadget,
    /// Biased bipartite sampler with marker probability `tau`.
    BipartiteBiased { tau: f64 },
    /// Random-order greedy coloring; needs `q > d`.
    RandomGreedy,
    /// Every proper coloring in lexicographic order (tiny graphs only).
    Enumerated,
    /// A fixed list, in order.
    #[serde(skip)]
    Fixed(Vec<Coloring>),
}

impl Sampler {
    pub fn name(&self) -> String {
        match self {
            Sampler::Gadget => "gadget".into(),
            Sampler::BipartiteBiased { tau } => format!("bipartite-biased(tau={tau})"),
            Sampler::RandomGreedy => "random-greedy".into(),
            Sampler::Enumerated => "enumerated".into(),
            Sampler::Fixed(list) => format!("fixed({})", list.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackResult {
    pub code: CodeSet,
    /// The budget (or the stream) ran out before `target` was reached.
    pub exhausted: bool,
}

/// Keeps each drawn coloring that is at distance `>= ⌈δn⌉` from everything
/// kept so far. Draw `k` of a random sampler uses seed `derive_seed(seed, k)`.
pub fn greedy_pack(
    graph: &RegularGraph,
    q: usize,
    sampler: &Sampler,
    delta: Fraction,
    target: usize,
    budget: usize,
    seed: u64,
) -> Result<PackResult, CodeError> {
    if target == 0 {
        return Err(CodeError::InvalidParameter("target must be at least 1".into()));
    }
    let threshold = ceil_times(&delta, graph.n());
    let stream: Box<dyn Iterator<Item = Result<Coloring, ColoringError>>> = match sampler {
        Sampler::Gadget => Box::new((0..budget as u64).map(|k| sample_gadget_coloring(graph, q, derive_seed(seed, k)))),
        Sampler::BipartiteBiased { tau } => {
            let tau = *tau;
            Box::new((0..budget as u64).map(move |k| sample_bipartite_biased(graph, q, tau, derive_seed(seed, k))))
        }
        Sampler::RandomGreedy => Box::new((0..budget as u64).map(|k| sample_random_greedy(graph, q, derive_seed(seed, k)))),
        Sampler::Enumerated => {
            let limits = EnumerateLimits::default();
            Box::new(enumerate_proper_with(graph, q, limits)?.into_iter().take(budget).map(Ok))
        }
        Sampler::Fixed(list) => {
            for x in list {
                x.check_against(graph)?;
                if x.q() != q {
                    return Err(CodeError::MixedBinding);
                }
            }
            Box::new(list.iter().take(budget).cloned().map(Ok))
        }
    };
    let mut kept: Vec<Coloring> = Vec::new();
    let mut min_dist: Option<usize> = None;
    let mut draws = 0;
    for x in stream {
        let x = x?;
        draws += 1;
        if !is_proper(graph, &x)? {
            continue;
        }
        let mut closest = usize::MAX;
        for y in &kept {
            closest = closest.min(distance(&x, y)?.distance);
            if (closest as i64) < threshold {
                break;
            }
        }
        if kept.is_empty() || closest as i64 >= threshold {
            if !kept.is_empty() {
                min_dist = Some(min_dist.map_or(closest, |m| m.min(closest)));
            }
            kept.push(x);
            if kept.len() == target {
                break;
            }
        }
    }
    Ok(PackResult {
        exhausted: kept.len() < target,
        code: CodeSet {
            members: kept,
            delta,
            min_dist,
            provenance: Provenance {
                sampler: sampler.name(),
                seed: matches!(sampler, Sampler::Gadget | Sampler::BipartiteBiased { .. } | Sampler::RandomGreedy).then_some(seed),
                draws,
            },
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactPacking {
    /// Largest δ-distinct set; 0 when the graph has no proper coloring.
    pub size: usize,
    /// Number of proper colorings enumerated.
    pub colorings: usize,
    pub witness: CodeSet,
}

/// Maximum δ-distinct set of proper colorings of one small graph: a maximum
/// clique in the graph on all proper colorings joining pairs at distance
/// `>= ⌈δn⌉`.
pub fn exact_max_packing(graph: &RegularGraph, q: usize, delta: Fraction) -> Result<ExactPacking, CodeError> {
    let limits = EnumerateLimits {
        max_colorings: CLIQUE_CAP,
        ..EnumerateLimits::default()
    };
    let all = match enumerate_proper_with(graph, q, limits) {
        Err(ColoringError::TooManyColorings(cap)) => {
            return Err(CodeError::TooLarge {
                what: "proper coloring",
                count: cap + 1,
                cap,
            })
        }
        other => other?,
    };
    let threshold = ceil_times(&delta, graph.n());
    let rows: Vec<Vec<usize>> = (0..all.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..all.len())
                .filter(|&j| distance(&all[i], &all[j]).map(|d| d.distance as i64 >= threshold).unwrap_or(false))
                .collect()
        })
        .collect();
    let mut compat = clique::BitGraph::new(all.len());
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            compat.add_edge(i, j);
        }
    }
    let chosen = clique::max_clique(&compat);
    let members: Vec<Coloring> = chosen.iter().map(|&i| all[i].clone()).collect();
    let min_dist = min_pairwise(&members)?.map(|w| w.0);
    Ok(ExactPacking {
        size: members.len(),
        colorings: all.len(),
        witness: CodeSet {
            members,
            delta,
            min_dist,
            provenance: Provenance {
                sampler: "exact".into(),
                seed: None,
                draws: all.len(),
            },
        },
    })
}

/// `log_q |C| / n`; 0 for an empty code or graph.
pub fn empirical_rate(code: &CodeSet) -> f64 {
    let (Some(first), k) = (code.members.first(), code.len()) else {
        return 0.0;
    };
    if first.is_empty() {
        return 0.0;
    }
    rate(k, first.q(), first.len())
}

pub fn rate(size: usize, q: usize, n: usize) -> f64 {
    if size == 0 || n == 0 {
        return 0.0;
    }
    (size as f64).ln() / (q as f64).ln() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::coordinate_colorings;
    use crate::graphs::{complete_graph, cycle_graph, gadget_expand, tensor_power};

    fn code_of(members: Vec<Coloring>, delta: Fraction) -> CodeSet {
        CodeSet {
            members,
            delta,
            min_dist: None,
            provenance: Provenance {
                sampler: "test".into(),
                seed: None,
                draws: 0,
            },
        }
    }

    #[test]
    fn verify_coordinate_code() {
        let g = tensor_power(3, 2).unwrap();
        let xs = coordinate_colorings(&g).unwrap();
        let ok = verify_delta_distinct(&code_of(xs.clone(), Fraction::new(2, 3))).unwrap();
        assert!(ok.ok);
        assert_eq!((ok.min_dist, ok.worst_pair), (Some(6), Some((0, 1))));
        let bad = verify_delta_distinct(&code_of(xs.clone(), Fraction::new(7, 10))).unwrap();
        assert!(!bad.ok);
        let single = verify_delta_distinct(&code_of(xs[..1].to_vec(), Fraction::new(1, 1))).unwrap();
        assert!(single.ok && single.min_dist.is_none());
        assert_eq!(verify_delta_distinct(&code_of(vec![], Fraction::new(0, 1))), Err(CodeError::Empty));
        let other = crate::colorings::enumerate_proper(&complete_graph(3).unwrap(), 3).unwrap();
        assert_eq!(
            verify_delta_distinct(&code_of(vec![xs[0].clone(), other[0].clone()], Fraction::new(0, 1))),
            Err(CodeError::MixedBinding)
        );
    }

    #[test]
    fn greedy_on_gadget_graph() {
        let g = gadget_expand(&complete_graph(4).unwrap()).unwrap();
        let packed = greedy_pack(&g, 3, &Sampler::Gadget, Fraction::new(11, 20), 50, 5000, 1).unwrap();
        assert!(packed.code.len() >= 2);
        assert!(verify_delta_distinct(&packed.code).unwrap().ok);
        let again = greedy_pack(&g, 3, &Sampler::Gadget, Fraction::new(11, 20), 50, 5000, 1).unwrap();
        assert_eq!(again, packed);
        let too_far = greedy_pack(&g, 3, &Sampler::Gadget, Fraction::new(23, 30), 5, 300, 1).unwrap();
        assert_eq!(too_far.code.len(), 1);
        assert!(too_far.exhausted);
        let one = greedy_pack(&g, 3, &Sampler::Gadget, Fraction::new(1, 2), 1, 10, 4).unwrap();
        assert_eq!(one.code.members, vec![sample_gadget_coloring(&g, 3, derive_seed(4, 0)).unwrap()]);
        assert_eq!(one.code.provenance.draws, 1);
    }

    #[test]
    fn exact_examples() {
        let c5 = cycle_graph(5).unwrap();
        let p = exact_max_packing(&c5, 3, Fraction::new(1, 5)).unwrap();
        assert_eq!((p.size, p.colorings), (5, 30));
        assert!(verify_delta_distinct(&p.witness).unwrap().ok);
        assert_eq!(exact_max_packing(&c5, 3, Fraction::new(0, 1)).unwrap().size, 30);
        assert_eq!(exact_max_packing(&c5, 3, Fraction::new(7, 10)).unwrap().size, 1);
        let k3 = complete_graph(3).unwrap();
        assert_eq!(exact_max_packing(&k3, 3, Fraction::new(1, 3)).unwrap().size, 1);
        assert_eq!(exact_max_packing(&complete_graph(4).unwrap(), 3, Fraction::new(1, 3)).unwrap().size, 0);
    }

    #[test]
    fn exact_dominates_greedy_on_enumeration() {
        let c7 = cycle_graph(7).unwrap();
        for num in 0..=4 {
            let delta = Fraction::new(num, 7);
            let exact = exact_max_packing(&c7, 3, delta).unwrap().size;
            let greedy = greedy_pack(&c7, 3, &Sampler::Enumerated, delta, usize::MAX, usize::MAX, 0).unwrap();
            assert!(exact >= greedy.code.len());
        }
    }

    #[test]
    fn rates() {
        let g = tensor_power(3, 2).unwrap();
        let xs = coordinate_colorings(&g).unwrap();
        assert_eq!(empirical_rate(&code_of(xs[..1].to_vec(), Fraction::new(0, 1))), 0.0);
        assert!((rate(9, 3, 40) - 0.05).abs() < 1e-15);
        assert!((rate(3usize.pow(5), 3, 5) - 1.0).abs() < 1e-12);
    }
}
