use std::collections::BTreeMap;

use serde::Serialize;

use crate::codes::CodeSet;
use crate::colorings::Color;
use crate::error::{CodeError, GraphError, RegimeError};
use crate::graphs::{subset_measures, RegularGraph};
use crate::spectral::{self, DENSE_TOL};

/// Most heavy classes [`near_independent_partition`] will join.
pub const HEAVY_CLASS_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionBound {
    pub lambda2: f64,
    /// `3 max(λ₂, ξ) / γ`
    pub bound: f64,
    /// `e(A ∪ B)`
    pub actual: f64,
    pub ok: bool,
}

/// Checks `e(A ∪ B) <= 3 max(λ₂, ξ) / γ` for disjoint `A`, `B` with
/// `w(A), w(B) >= γ` and `e(A, B) <= ξ`.
pub fn near_independent_union_bound(
    graph: &RegularGraph,
    a: &[u32],
    b: &[u32],
    gamma: f64,
    xi: f64,
) -> Result<UnionBound, RegimeError> {
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(RegimeError::OutOfRange(format!("gamma must be positive, got {gamma}")));
    }
    let cross = match subset_measures(graph, a, Some(b)) {
        Err(GraphError::Overlap(v)) => {
            return Err(RegimeError::PreconditionFail(format!("A and B share vertex {v}")))
        }
        other => other?,
    };
    let wa = cross.w;
    let wb = subset_measures(graph, b, None)?.w;
    for (name, w) in [("A", wa), ("B", wb)] {
        if w < gamma {
            return Err(RegimeError::PreconditionFail(format!("w({name}) = {w} is below gamma = {gamma}")));
        }
    }
    if cross.e_cross > xi {
        return Err(RegimeError::PreconditionFail(format!("e(A, B) = {} exceeds xi = {xi}", cross.e_cross)));
    }
    let union: Vec<u32> = a.iter().chain(b).copied().collect();
    let actual = subset_measures(graph, &union, None)?.e_within;
    let lambda2 = spectral::lambda2(graph, DENSE_TOL)?;
    let bound = 3.0 * lambda2.max(xi) / gamma;
    Ok(UnionBound {
        lambda2,
        bound,
        actual,
        ok: actual <= bound + 1e-12,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionComponent {
    /// Color tuples `α` of the classes in this component, sorted.
    pub classes: Vec<Vec<Color>>,
    pub size: usize,
    pub w: f64,
    pub edges_within: usize,
    pub e_within: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionReport {
    pub k: usize,
    pub gamma: f64,
    pub lambda2: f64,
    /// Nonempty classes `S_α`.
    pub occupied_classes: usize,
    /// Classes with `w(α) >= γ`.
    pub heavy_classes: usize,
    /// Weight outside the heavy classes; at most `q^K γ`.
    pub light_weight: f64,
    pub light_weight_ok: bool,
    pub components: Vec<PartitionComponent>,
    /// Classes in different components disagree on every coordinate.
    pub cross_components_disjoint: bool,
    /// Edges between different components, in units of `|E|`.
    pub e_between: f64,
    /// `ln((3/γ)^{q^K} λ₂)`; `None` when `λ₂ <= 0`.
    pub log_bound: Option<f64>,
}

/// Groups vertices by the tuple of colors the code members give them,
/// keeps classes of weight at least `γ`, and splits them into the
/// connected components of the graph joining classes that agree on some
/// coordinate.
pub fn near_independent_partition(graph: &RegularGraph, code: &CodeSet, gamma: f64) -> Result<PartitionReport, RegimeError> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(RegimeError::OutOfRange(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    let first = code.members.first().ok_or(CodeError::Empty)?;
    for x in &code.members {
        x.check_against(graph)?;
        if x.q() != first.q() {
            return Err(CodeError::MixedBinding.into());
        }
    }
    let (n, q, k) = (graph.n(), first.q(), code.len());
    let mut classes: BTreeMap<Vec<Color>, Vec<u32>> = BTreeMap::new();
    for v in 0..n {
        let alpha: Vec<Color> = code.members.iter().map(|x| x.color(v)).collect();
        classes.entry(alpha).or_default().push(v as u32);
    }
    let heavy: Vec<(&Vec<Color>, &Vec<u32>)> = classes
        .iter()
        .filter(|(_, vs)| vs.len() as f64 / n as f64 >= gamma)
        .collect();
    if heavy.len() > HEAVY_CLASS_CAP {
        return Err(RegimeError::TooManyClasses(heavy.len() as u128));
    }
    let agree = |a: &[Color], b: &[Color]| a.iter().zip(b).any(|(x, y)| x == y);

    let h = heavy.len();
    let mut root: Vec<usize> = (0..h).collect();
    fn find(root: &mut [usize], mut i: usize) -> usize {
        while root[i] != i {
            root[i] = root[root[i]];
            i = root[i];
        }
        i
    }
    for i in 0..h {
        for j in i + 1..h {
            if agree(heavy[i].0, heavy[j].0) {
                let (ri, rj) = (find(&mut root, i), find(&mut root, j));
                if ri != rj {
                    root[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let labels: Vec<usize> = (0..h).map(|i| find(&mut root, i)).collect();
    let mut order: Vec<usize> = labels.clone();
    order.sort_unstable();
    order.dedup();

    let mut components = Vec::with_capacity(order.len());
    let mut owner = vec![usize::MAX; n];
    for (c, &label) in order.iter().enumerate() {
        let members: Vec<usize> = (0..h).filter(|&i| labels[i] == label).collect();
        let vertices: Vec<u32> = members.iter().flat_map(|&i| heavy[i].1.iter().copied()).collect();
        for &v in &vertices {
            owner[v as usize] = c;
        }
        let m = subset_measures(graph, &vertices, None)?;
        components.push(PartitionComponent {
            classes: members.iter().map(|&i| heavy[i].0.clone()).collect(),
            size: m.size,
            w: m.w,
            edges_within: m.edges_within,
            e_within: m.e_within,
        });
    }
    let between = graph
        .edges()
        .filter(|&(u, v)| {
            let (a, b) = (owner[u as usize], owner[v as usize]);
            a != usize::MAX && b != usize::MAX && a != b
        })
        .count();
    let cross_ok = (0..h).all(|i| (i + 1..h).all(|j| labels[i] == labels[j] || !agree(heavy[i].0, heavy[j].0)));
    let heavy_weight: usize = heavy.iter().map(|(_, vs)| vs.len()).sum();
    let light_weight = (n - heavy_weight) as f64 / n as f64;
    let classes_total = (q as f64).powi(k as i32);
    let lambda2 = spectral::lambda2(graph, DENSE_TOL)?;
    let e_total = graph.edge_count();
    Ok(PartitionReport {
        k,
        gamma,
        lambda2,
        occupied_classes: classes.len(),
        heavy_classes: h,
        light_weight,
        light_weight_ok: light_weight <= classes_total * gamma + 1e-12,
        components,
        cross_components_disjoint: cross_ok,
        e_between: if e_total == 0 { 0.0 } else { between as f64 / e_total as f64 },
        log_bound: (lambda2 > 0.0).then(|| classes_total * (3.0 / gamma).ln() + lambda2.ln()),
    })
}
