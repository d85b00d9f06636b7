use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Construction, RegularGraph};
use crate::error::GraphError;
use crate::seeds::derive_seed;
use crate::spectral;

/// A sign in {-1, +1} for every edge, indexed by canonical edge id
/// (the order of [`RegularGraph::edges`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signing(Vec<i8>);

impl Signing {
    pub fn new(signs: Vec<i8>) -> Result<Self, GraphError> {
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(GraphError::InvalidParameter(format!("sign {s} is not +1/-1")));
        }
        Ok(Signing(signs))
    }

    pub fn constant(graph: &RegularGraph, sign: i8) -> Self {
        Signing(vec![sign.signum(); graph.edge_count()])
    }

    pub fn random<R: Rng>(graph: &RegularGraph, rng: &mut R) -> Self {
        Signing(
            (0..graph.edge_count())
                .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn flip(&mut self, edge: usize) {
        self.0[edge] = -self.0[edge];
    }
}

/// The 2-lift of `graph` under `signing`: vertex `v` becomes `v` and `v + n`;
/// a `+1` edge `uv` becomes `{u, v}` and `{u+n, v+n}`, a `-1` edge becomes
/// `{u, v+n}` and `{u+n, v}`.
pub fn two_lift(graph: &RegularGraph, signing: &Signing) -> Result<RegularGraph, GraphError> {
    if signing.len() != graph.edge_count() {
        return Err(GraphError::SigningMismatch {
            expected: graph.edge_count(),
            found: signing.len(),
        });
    }
    let n = graph.n() as u32;
    let mut edges = Vec::with_capacity(2 * signing.len());
    for ((u, v), &s) in graph.edges().zip(signing.signs()) {
        if s > 0 {
            edges.push((u, v));
            edges.push((u + n, v + n));
        } else {
            edges.push((u, v + n));
            edges.push((u + n, v));
        }
    }
    let parts = graph
        .parts()
        .map(|p| p.iter().chain(p.iter()).copied().collect());
    RegularGraph::assemble(
        2 * graph.n(),
        &edges,
        parts,
        Construction::TwoLift { base: graph.id() },
    )
}

/// Best signing found by [`search_low_lambda_signing`].
#[derive(Debug, Clone)]
pub struct SigningSearch {
    pub signing: Signing,
    /// Second normalized eigenvalue of the lift under `signing`.
    pub lambda2: f64,
    /// Top eigenvalue of the signed normalized adjacency; the lift's
    /// spectrum is the base spectrum together with the signed spectrum.
    pub signed_top: f64,
    /// Second eigenvalue of the base graph.
    pub base_lambda2: f64,
}

/// Randomized restarts of single-edge-flip descent on the second eigenvalue
/// of the 2-lift.
///
/// The lift's spectrum is the union of the spectrum of `graph` and that of
/// its signed adjacency, so `λ₂(lift) = max(λ₂(G), λ₁(A_s))`. Descent
/// minimizes `λ₁(A_s)`, which orders signings the same way whenever the
/// signed part dominates and keeps improving below the plateau. Restarts use
/// derived seeds and run in parallel; the reduction picks the smallest
/// `(λ₂, λ₁(A_s), signing)` so the result does not depend on thread count.
pub fn search_low_lambda_signing(
    graph: &RegularGraph,
    restarts: usize,
    seed: u64,
) -> Result<SigningSearch, GraphError> {
    if graph.degree() == 0 {
        return Err(GraphError::InvalidParameter("graph has no edges to sign".into()));
    }
    let base_lambda2 = spectral::dense_eigenvalues(graph)
        .map_err(|e| GraphError::InvalidParameter(e.to_string()))?
        .get(1)
        .copied()
        .unwrap_or(1.0);
    let edges: Vec<(u32, u32)> = graph.edges().collect();
    let best = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, r as u64));
            descend(graph, &edges, Signing::random(graph, &mut rng), &mut rng)
        })
        .reduce_with(|a, b| {
            let ka = (f64::max(base_lambda2, a.1), a.1);
            let kb = (f64::max(base_lambda2, b.1), b.1);
            match ka.partial_cmp(&kb) {
                Some(std::cmp::Ordering::Less) => a,
                Some(std::cmp::Ordering::Greater) => b,
                _ => {
                    if a.0 <= b.0 {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .expect("at least one restart");
    Ok(SigningSearch {
        lambda2: base_lambda2.max(best.1),
        signed_top: best.1,
        signing: best.0,
        base_lambda2,
    })
}

fn descend(
    graph: &RegularGraph,
    edges: &[(u32, u32)],
    mut signing: Signing,
    rng: &mut ChaCha8Rng,
) -> (Signing, f64) {
    const MAX_PASSES: usize = 50;
    let n = graph.n();
    let scale = 1.0 / graph.degree() as f64;
    let mut matrix = DMatrix::<f64>::zeros(n, n);
    for (&(u, v), &s) in edges.iter().zip(signing.signs()) {
        matrix[(u as usize, v as usize)] = s as f64 * scale;
        matrix[(v as usize, u as usize)] = s as f64 * scale;
    }
    let top = |m: &DMatrix<f64>| m.symmetric_eigenvalues().max();
    let mut current = top(&matrix);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    for _ in 0..MAX_PASSES {
        order.shuffle(rng);
        let mut improved = false;
        for &k in &order {
            let (u, v) = (edges[k].0 as usize, edges[k].1 as usize);
            let flipped = -matrix[(u, v)];
            matrix[(u, v)] = flipped;
            matrix[(v, u)] = flipped;
            let candidate = top(&matrix);
            if candidate < current - 1e-12 {
                current = candidate;
                signing.flip(k);
                improved = true;
            } else {
                matrix[(u, v)] = -flipped;
                matrix[(v, u)] = -flipped;
            }
        }
        if !improved {
            break;
        }
    }
    (signing, current)
}
