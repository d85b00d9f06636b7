use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Color, Coloring};
use crate::error::ColoringError;
use crate::graphs::{tuple_digits, Construction, RegularGraph};

fn require_q(q: usize, min: usize) -> Result<(), ColoringError> {
    if q < min || q > Color::MAX as usize + 1 {
        return Err(ColoringError::InvalidQ {
            needed: format!("q >= {min}"),
            found: q,
        });
    }
    Ok(())
}

/// Part labels, taken from the graph or computed by 2-coloring it.
fn part_labels(graph: &RegularGraph) -> Result<Vec<u8>, ColoringError> {
    match graph.parts() {
        Some(p) => Ok(p.to_vec()),
        None => graph.bipartition().ok_or(ColoringError::NotBipartite),
    }
}

/// Extends a coloring of the base graph to its gadget expansion.
///
/// On a block over base edge `xy` with `X(x) = i`, `X(y) = j`: if `i = j`
/// the part next to `x` gets `i + 1` and the part next to `y` gets `i + 2`
/// (mod `q`); otherwise the part next to `x` gets `j` and the other gets `i`.
/// The result is proper whenever `q >= 3`, whatever the base colors.
pub fn gadget_coloring_from_base(
    graph: &RegularGraph,
    q: usize,
    base_colors: &[Color],
) -> Result<Coloring, ColoringError> {
    require_q(q, 3)?;
    let meta = graph.gadget_meta().ok_or(ColoringError::NoGadgetMeta)?;
    if base_colors.len() != meta.base_n {
        return Err(ColoringError::BindingMismatch(format!(
            "{} base colors for a base graph on {} vertices",
            base_colors.len(),
            meta.base_n
        )));
    }
    if let Some(v) = base_colors.iter().position(|&c| c as usize >= q) {
        return Err(ColoringError::InvalidColor {
            vertex: v,
            color: base_colors[v] as u32,
            q,
        });
    }
    let mut colors = vec![0 as Color; graph.n()];
    colors[..meta.base_n].copy_from_slice(base_colors);
    let q16 = q as u16;
    for block in &meta.blocks {
        let i = base_colors[block.x as usize];
        let j = base_colors[block.y as usize];
        let (cx, cy) = if i == j {
            ((i + 1) % q16, (i + 2) % q16)
        } else {
            (j, i)
        };
        for &v in &block.x_side {
            colors[v as usize] = cx;
        }
        for &v in &block.y_side {
            colors[v as usize] = cy;
        }
    }
    Ok(Coloring::new_unchecked(graph.id(), q, colors))
}

/// Base vertices i.i.d. uniform, then [`gadget_coloring_from_base`].
pub fn sample_gadget_coloring(graph: &RegularGraph, q: usize, seed: u64) -> Result<Coloring, ColoringError> {
    require_q(q, 3)?;
    let meta = graph.gadget_meta().ok_or(ColoringError::NoGadgetMeta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<Color> = (0..meta.base_n)
        .map(|_| rng.random_range(0..q) as Color)
        .collect();
    gadget_coloring_from_base(graph, q, &base)
}

/// Colors vertices in a uniformly random order, each with a uniform color
/// among those its already-colored neighbors leave free. Needs `q > d` so a
/// free color always exists.
pub fn sample_random_greedy(graph: &RegularGraph, q: usize, seed: u64) -> Result<Coloring, ColoringError> {
    require_q(q, 2)?;
    if q <= graph.degree() {
        return Err(ColoringError::InvalidQ {
            needed: format!("q > d = {}", graph.degree()),
            found: q,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..graph.n()).collect();
    order.shuffle(&mut rng);
    let unset = Color::MAX;
    let mut colors = vec![unset; graph.n()];
    let mut free = Vec::with_capacity(q);
    for v in order {
        free.clear();
        free.extend((0..q as Color).filter(|&c| graph.neighbors(v).iter().all(|&w| colors[w as usize] != c)));
        colors[v] = free[rng.random_range(0..free.len())];
    }
    Ok(Coloring::new_unchecked(graph.id(), q, colors))
}

/// Part 0 gets color `q-1` with probability `tau` and otherwise a uniform
/// color below `⌊q/2⌋`. Part 1 gets `q-2` next to any `q-1`, and otherwise a
/// uniform color in `⌊q/2⌋..q`.
pub fn sample_bipartite_biased(
    graph: &RegularGraph,
    q: usize,
    tau: f64,
    seed: u64,
) -> Result<Coloring, ColoringError> {
    require_q(q, 3)?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(ColoringError::BadTau(tau));
    }
    let parts = part_labels(graph)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = q / 2;
    let marker = (q - 1) as Color;
    let mut colors = vec![0 as Color; graph.n()];
    for v in (0..graph.n()).filter(|&v| parts[v] == 0) {
        colors[v] = if rng.random_bool(tau) {
            marker
        } else {
            rng.random_range(0..low) as Color
        };
    }
    for v in (0..graph.n()).filter(|&v| parts[v] == 1) {
        let marked = graph.neighbors(v).iter().any(|&w| colors[w as usize] == marker);
        colors[v] = if marked {
            marker - 1
        } else {
            rng.random_range(low..q) as Color
        };
    }
    Ok(Coloring::new_unchecked(graph.id(), q, colors))
}

/// The pair at distance `(1 - 1/(q-1))|V|`. `X`: part 0 all color 0, part 1
/// split into consecutive blocks colored `1, …, q-1`. `Y`: part 1 all color
/// `q-1`, part 0 in blocks colored `0, …, q-2`.
pub fn layered_bipartite_pair(graph: &RegularGraph, q: usize) -> Result<(Coloring, Coloring), ColoringError> {
    require_q(q, 3)?;
    let parts = part_labels(graph)?;
    let side = |p: u8| (0..graph.n()).filter(|&v| parts[v] == p).collect::<Vec<_>>();
    let (left, right) = (side(0), side(1));
    if left.len() != right.len() || left.len() % (q - 1) != 0 || left.is_empty() {
        return Err(ColoringError::BadPartSize(left.len().max(right.len()), q - 1));
    }
    let m = left.len() / (q - 1);
    let mut x = vec![0 as Color; graph.n()];
    let mut y = vec![0 as Color; graph.n()];
    for (k, &v) in right.iter().enumerate() {
        x[v] = (1 + k / m) as Color;
        y[v] = (q - 1) as Color;
    }
    for (k, &v) in left.iter().enumerate() {
        x[v] = 0;
        y[v] = (k / m) as Color;
    }
    Ok((
        Coloring::new_unchecked(graph.id(), q, x),
        Coloring::new_unchecked(graph.id(), q, y),
    ))
}

/// `X_i(a_1, …, a_N) = a_i` on `K_q^{⊗N}`.
pub fn coordinate_colorings(graph: &RegularGraph) -> Result<Vec<Coloring>, ColoringError> {
    let &Construction::Tensor { q, power } = graph.construction() else {
        return Err(ColoringError::NotTensor);
    };
    let mut digits = vec![0usize; power];
    let mut out = vec![Vec::with_capacity(graph.n()); power];
    for v in 0..graph.n() {
        tuple_digits(v, q, &mut digits);
        for (col, &a) in out.iter_mut().zip(&digits) {
            col.push(a as Color);
        }
    }
    Ok(out
        .into_iter()
        .map(|colors| Coloring::new_unchecked(graph.id(), q, colors))
        .collect())
}

/// Both copies of each vertex inherit its color.
pub fn lift_coloring(x: &Coloring, lifted: &RegularGraph) -> Result<Coloring, ColoringError> {
    match lifted.construction() {
        Construction::TwoLift { base } if *base == x.graph_id() && lifted.n() == 2 * x.len() => {
            let colors = x.colors().iter().chain(x.colors()).copied().collect();
            Ok(Coloring::new_unchecked(lifted.id(), x.q(), colors))
        }
        _ => Err(ColoringError::BindingMismatch(format!(
            "graph {} is not a 2-lift of {}",
            lifted.id(),
            x.graph_id()
        ))),
    }
}
