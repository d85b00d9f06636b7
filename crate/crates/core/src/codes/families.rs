//! Graph families used to lower-bound the largest δ-distinct code at a
//! given spectral level.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{greedy_pack, CodeSet, Sampler};
use crate::colorings::{coordinate_colorings, layered_bipartite_pair, lift_coloring, Coloring};
use crate::error::CodeError;
use crate::graphs::{
    gadget_expand, random_regular_bipartite, search_low_lambda_signing, tensor_power, two_lift, RegularGraph,
};
use crate::rational::{ceil_times, Fraction};
use crate::seeds::derive_seed;
use crate::spectral::{self, DENSE_TOL};

/// A family of graphs indexed by a size parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// Gadget expansion of a random cubic bipartite base with parts of
    /// `size`; `n = 20 * size`.
    Gadget,
    /// Random `d`-regular bipartite graph with parts of `size`. Codes come
    /// from the layered pair and from the biased sampler with marker
    /// probability `tau` (default `1/(8d²)`).
    RandomBipartite {
        d: usize,
        #[serde(default)]
        tau: Option<f64>,
    },
    /// `K_q^{⊗power}` followed by `size` 2-lifts, each with a searched
    /// low-λ₂ signing; the code is the lifted coordinate colorings.
    TensorLift {
        power: usize,
        #[serde(default = "default_restarts")]
        restarts: usize,
    },
}

fn default_restarts() -> usize {
    4
}

/// A built member of a family with its measured spectrum.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: RegularGraph,
    pub lambda2: f64,
    /// Structured colorings carried along with the graph (lifted coordinate
    /// colorings, or the layered pair).
    pub structured: Vec<Coloring>,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gadget => "gadget",
            Family::RandomBipartite { .. } => "random-bipartite",
            Family::TensorLift { .. } => "tensor-lift",
        }
    }

    pub fn build(&self, q: usize, size: usize, seed: u64) -> Result<Instance, CodeError> {
        let (graph, structured) = match self {
            Family::Gadget => {
                let base = random_regular_bipartite(size, 3, seed)?;
                (gadget_expand(&base)?, Vec::new())
            }
            Family::RandomBipartite { d, .. } => {
                let g = random_regular_bipartite(size, *d, seed)?;
                let pair = match layered_bipartite_pair(&g, q) {
                    Ok((x, y)) => vec![x, y],
                    Err(_) => Vec::new(),
                };
                (g, pair)
            }
            Family::TensorLift { power, restarts } => {
                let mut g = tensor_power(q, *power)?;
                let mut xs = coordinate_colorings(&g)?;
                for level in 0..size {
                    let found = search_low_lambda_signing(&g, *restarts, derive_seed(seed, level as u64))?;
                    g = two_lift(&g, &found.signing)?;
                    xs = xs.iter().map(|x| lift_coloring(x, &g)).collect::<Result<_, _>>()?;
                }
                (g, xs)
            }
        };
        let lambda2 = spectral::lambda2(&graph, DENSE_TOL)?;
        Ok(Instance {
            graph,
            lambda2,
            structured,
        })
    }

    /// Largest code this family's strategies find on `instance`. The
    /// returned label names the strategy.
    pub fn best_code(
        &self,
        instance: &Instance,
        q: usize,
        delta: Fraction,
        target: usize,
        budget: usize,
        seed: u64,
    ) -> Result<(CodeSet, &'static str), CodeError> {
        let g = &instance.graph;
        let structured = || -> Result<CodeSet, CodeError> {
            Ok(greedy_pack(g, q, &Sampler::Fixed(instance.structured.clone()), delta, target, usize::MAX, seed)?.code)
        };
        match self {
            Family::Gadget => Ok((greedy_pack(g, q, &Sampler::Gadget, delta, target, budget, seed)?.code, "gadget-sampler")),
            Family::TensorLift { .. } => Ok((structured()?, "tensor-lift")),
            Family::RandomBipartite { d, tau } => {
                let tau = tau.unwrap_or(1.0 / (8.0 * (*d * *d) as f64));
                let sampled = greedy_pack(g, q, &Sampler::BipartiteBiased { tau }, delta, target, budget, seed)?.code;
                let layered = if instance.structured.is_empty() {
                    None
                } else {
                    Some(structured()?)
                };
                match layered {
                    Some(l) if l.len() >= sampled.len() => Ok((l, "layered-pair")),
                    _ => Ok((sampled, "biased-sampler")),
                }
            }
        }
    }
}

/// Configuration of [`empirical_f`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub family: Family,
    pub q: usize,
    #[serde(with = "crate::rational::as_string")]
    pub delta: Fraction,
    pub lambda_cap: f64,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub budget: usize,
    #[serde(default = "default_target")]
    pub target: usize,
}

fn default_target() -> usize {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub size: usize,
    pub seed: u64,
    pub n: usize,
    pub lambda2: f64,
    /// `λ₂ <= lambda_cap`; rejected instances get no code.
    pub accepted: bool,
    pub code_size: Option<usize>,
    pub min_dist: Option<usize>,
    pub threshold: i64,
    pub rate: Option<f64>,
    pub strategy: Option<String>,
    pub error: Option<String>,
}

/// One row per `(size, seed)`, in that order. Rows are lower bounds on the
/// largest code at this `(δ, λ)`; build failures are recorded, not raised.
pub fn empirical_f(config: &FamilyConfig) -> Vec<FamilyRow> {
    let tasks: Vec<(usize, u64)> = config
        .sizes
        .iter()
        .flat_map(|&s| config.seeds.iter().map(move |&seed| (s, seed)))
        .collect();
    tasks
        .par_iter()
        .map(|&(size, seed)| row(config, size, seed))
        .collect()
}

fn row(config: &FamilyConfig, size: usize, seed: u64) -> FamilyRow {
    let mut out = FamilyRow {
        size,
        seed,
        n: 0,
        lambda2: f64::NAN,
        accepted: false,
        code_size: None,
        min_dist: None,
        threshold: 0,
        rate: None,
        strategy: None,
        error: None,
    };
    let instance = match config.family.build(config.q, size, seed) {
        Ok(i) => i,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.n = instance.graph.n();
    out.lambda2 = instance.lambda2;
    out.threshold = ceil_times(&config.delta, out.n);
    out.accepted = instance.lambda2 <= config.lambda_cap;
    if !out.accepted {
        return out;
    }
    let pack_seed = derive_seed(seed, size as u64);
    match config
        .family
        .best_code(&instance, config.q, config.delta, config.target, config.budget, pack_seed)
    {
        Ok((code, strategy)) => {
            out.code_size = Some(code.len());
            out.min_dist = code.min_dist;
            out.rate = Some(super::empirical_rate(&code));
            out.strategy = Some(strategy.into());
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_family_passes_cap() {
        let config = FamilyConfig {
            family: Family::Gadget,
            q: 3,
            delta: Fraction::new(1, 2),
            lambda_cap: 0.9999,
            sizes: vec![3, 5],
            seeds: vec![1, 2],
            budget: 300,
            target: 20,
        };
        let rows = empirical_f(&config);
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert!(r.accepted, "{r:?}");
            assert!(r.code_size.unwrap() >= 2);
        }
        assert_eq!(rows, empirical_f(&config));
    }

    #[test]
    fn tensor_lift_family_keeps_coordinates() {
        let config = FamilyConfig {
            family: Family::TensorLift { power: 2, restarts: 2 },
            q: 3,
            delta: Fraction::new(2, 3),
            lambda_cap: 1.0,
            sizes: vec![0, 1, 2],
            seeds: vec![3],
            budget: 0,
            target: 10,
        };
        for r in empirical_f(&config) {
            assert_eq!(r.n, 9 << r.size);
            assert_eq!(r.code_size, Some(2));
            assert_eq!(r.min_dist, Some(6 << r.size));
            // Only the base sits at 1/(q-1)^2; at degree 4 the lifts drift above it.
            assert!(r.lambda2 < 1.0, "{r:?}");
        }
    }

    #[test]
    fn trivial_delta_gives_singletons() {
        let config = FamilyConfig {
            family: Family::RandomBipartite { d: 3, tau: None },
            q: 3,
            delta: Fraction::new(23, 30),
            lambda_cap: 1.0,
            sizes: vec![10, 20],
            seeds: vec![0],
            budget: 200,
            target: 10,
        };
        for r in empirical_f(&config) {
            assert_eq!(r.code_size, Some(1));
        }
    }
}
