use super::{Color, Coloring};
use crate::error::ColoringError;
use crate::graphs::RegularGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateLimits {
    pub max_vertices: usize,
    /// Abort once more colorings than this have been found.
    pub max_colorings: usize,
}

impl Default for EnumerateLimits {
    fn default() -> Self {
        EnumerateLimits {
            max_vertices: 16,
            max_colorings: usize::MAX,
        }
    }
}

/// All proper `q`-colorings as functions, in lexicographic order.
pub fn enumerate_proper(graph: &RegularGraph, q: usize) -> Result<Vec<Coloring>, ColoringError> {
    enumerate_proper_with(graph, q, EnumerateLimits::default())
}

pub fn enumerate_proper_with(
    graph: &RegularGraph,
    q: usize,
    limits: EnumerateLimits,
) -> Result<Vec<Coloring>, ColoringError> {
    let mut out = Vec::new();
    backtrack(graph, q, limits, |colors| {
        if out.len() == limits.max_colorings {
            return Err(ColoringError::TooManyColorings(limits.max_colorings));
        }
        out.push(Coloring::new_unchecked(graph.id(), q, colors.to_vec()));
        Ok(())
    })?;
    Ok(out)
}

/// Number of proper `q`-colorings, without materializing them.
pub fn count_proper(graph: &RegularGraph, q: usize) -> Result<u64, ColoringError> {
    let mut count = 0u64;
    backtrack(graph, q, EnumerateLimits::default(), |_| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

/// Colors vertices in id order; a vertex only checks its lower-numbered
/// neighbors, so every leaf is proper.
fn backtrack(
    graph: &RegularGraph,
    q: usize,
    limits: EnumerateLimits,
    mut visit: impl FnMut(&[Color]) -> Result<(), ColoringError>,
) -> Result<(), ColoringError> {
    let n = graph.n();
    if n > limits.max_vertices {
        return Err(ColoringError::TooLarge { n, cap: limits.max_vertices });
    }
    if q == 0 || q > Color::MAX as usize {
        return Err(ColoringError::InvalidQ {
            needed: "q >= 1".into(),
            found: q,
        });
    }
    if n == 0 {
        return visit(&[]);
    }
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| w < v)
                .collect()
        })
        .collect();
    let q = q as Color;
    let mut colors = vec![0 as Color; n];
    // next[v] is the next color to try at depth v.
    let mut next = vec![0 as Color; n];
    let mut v = 0usize;
    loop {
        let mut placed = false;
        while next[v] < q {
            let c = next[v];
            next[v] += 1;
            if earlier[v].iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                placed = true;
                break;
            }
        }
        if placed {
            if v + 1 == n {
                visit(&colors)?;
            } else {
                v += 1;
                next[v] = 0;
            }
            continue;
        }
        if v == 0 {
            return Ok(());
        }
        v -= 1;
    }
}
