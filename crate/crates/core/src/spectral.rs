//! Spectra of normalized adjacency matrices.
//!
//! The dense path (Householder tridiagonalization followed by implicit QR,
//! via `nalgebra`) is the source of truth up to [`DENSE_CAP`] vertices.
//! Above it, `λ₂` and `λ_n` come from power iteration on shifted operators
//! whose top eigenvalue is the one wanted:
//!
//! * `(I + A) / 2` restricted to `1^⊥` has top eigenvalue `(1 + λ₂) / 2`;
//! * `(I - A) / 2` has top eigenvalue `(1 - λ_n) / 2`.
//!
//! Both shifted operators are positive semidefinite, so the Rayleigh quotient
//! increases monotonically and the distance to the limit can be estimated
//! from the ratio of successive increments.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use serde::Serialize;

use crate::error::SpectralError;
use crate::graphs::{edge_expansion_exact, RegularGraph};
use crate::seeds::stream_rng;

pub const DENSE_CAP: usize = 4096;
pub const DENSE_TOL: f64 = 1e-9;
pub const ITERATIVE_TOL: f64 = 1e-7;
pub const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    Dense,
    DeflatedIteration,
}

/// Eigenvalues of the normalized adjacency, in descending order.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub method: SpectrumMethod,
    /// `max_i ‖A x_i - λ_i x_i‖_∞` over the computed eigenpairs.
    pub residual: f64,
}

impl Spectrum {
    pub fn lambda2(&self) -> f64 {
        self.eigenvalues.get(1).copied().unwrap_or(1.0)
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is nonempty")
    }
}

pub fn normalized_adjacency(graph: &RegularGraph) -> DMatrix<f64> {
    let n = graph.n();
    let mut m = DMatrix::zeros(n, n);
    if graph.degree() == 0 {
        return m;
    }
    let w = 1.0 / graph.degree() as f64;
    for u in 0..n {
        for &v in graph.neighbors(u) {
            m[(u, v as usize)] = w;
        }
    }
    m
}

fn check_dense(graph: &RegularGraph) -> Result<(), SpectralError> {
    if graph.n() > DENSE_CAP {
        return Err(SpectralError::TooLarge { n: graph.n(), cap: DENSE_CAP });
    }
    if graph.degree() == 0 {
        return Err(SpectralError::ZeroDegree);
    }
    Ok(())
}

/// All eigenvalues, descending, without eigenvectors.
pub fn dense_eigenvalues(graph: &RegularGraph) -> Result<Vec<f64>, SpectralError> {
    check_dense(graph)?;
    let mut values: Vec<f64> = normalized_adjacency(graph).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Full dense spectrum with the eigenpair residual.
pub fn full_spectrum(graph: &RegularGraph) -> Result<Spectrum, SpectralError> {
    check_dense(graph)?;
    let n = graph.n();
    let eig = SymmetricEigen::new(normalized_adjacency(graph));
    let w = 1.0 / graph.degree() as f64;
    let mut residual = 0.0f64;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let x = eig.eigenvectors.column(i);
        for u in 0..n {
            let ax: f64 = graph.neighbors(u).iter().map(|&v| x[v as usize]).sum::<f64>() * w;
            residual = residual.max((ax - lambda * x[u]).abs());
        }
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum {
        eigenvalues,
        method: SpectrumMethod::Dense,
        residual,
    })
}

/// Second-largest normalized eigenvalue, counted with multiplicity.
///
/// 0-regular and disconnected graphs return exactly `1.0`.
pub fn lambda2(graph: &RegularGraph, tol: f64) -> Result<f64, SpectralError> {
    if graph.degree() == 0 || !graph.is_connected() {
        return Ok(1.0);
    }
    if graph.n() <= DENSE_CAP {
        return Ok(dense_eigenvalues(graph)?[1]);
    }
    lambda2_iterative(graph, tol, MAX_ITERATIONS)
}

/// Smallest normalized eigenvalue.
pub fn lambda_min(graph: &RegularGraph, tol: f64) -> Result<f64, SpectralError> {
    if graph.degree() == 0 {
        return Err(SpectralError::ZeroDegree);
    }
    if graph.n() <= DENSE_CAP {
        return Ok(*dense_eigenvalues(graph)?.last().expect("n >= 1"));
    }
    lambda_min_iterative(graph, tol, MAX_ITERATIONS)
}

/// `λ₂` by power iteration on `(I + A) / 2` deflated against the all-ones
/// vector. Available at every size so it can be cross-checked against the
/// dense path.
pub fn lambda2_iterative(graph: &RegularGraph, tol: f64, max_iter: usize) -> Result<f64, SpectralError> {
    if graph.degree() == 0 || !graph.is_connected() {
        return Ok(1.0);
    }
    let top = power_iteration(graph, 1.0, true, tol / 2.0, max_iter)?;
    Ok(2.0 * top - 1.0)
}

/// `λ_n` by power iteration on `(I - A) / 2`.
pub fn lambda_min_iterative(graph: &RegularGraph, tol: f64, max_iter: usize) -> Result<f64, SpectralError> {
    if graph.degree() == 0 {
        return Err(SpectralError::ZeroDegree);
    }
    let top = power_iteration(graph, -1.0, true, tol / 2.0, max_iter)?;
    Ok(1.0 - 2.0 * top)
}

/// Top eigenvalue of `(I + sign·A) / 2` on `1^⊥`.
fn power_iteration(
    graph: &RegularGraph,
    sign: f64,
    deflate: bool,
    tol: f64,
    max_iter: usize,
) -> Result<f64, SpectralError> {
    let n = graph.n();
    let w = sign / graph.degree() as f64;
    let mut rng = stream_rng(0x5eed_1a2b, n as u64);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut y = vec![0.0; n];
    let project = |v: &mut [f64]| {
        if deflate {
            let mean = v.iter().sum::<f64>() / n as f64;
            v.iter_mut().for_each(|t| *t -= mean);
        }
        let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|t| *t /= norm);
        }
        norm
    };
    if project(&mut x) == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    let mut prev = f64::NAN;
    let mut prev_step = f64::NAN;
    for iter in 0..max_iter {
        for u in 0..n {
            let s: f64 = graph.neighbors(u).iter().map(|&v| x[v as usize]).sum();
            y[u] = 0.5 * (x[u] + w * s);
        }
        let rho: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        if project(&mut y) == 0.0 {
            return Ok(0.0);
        }
        std::mem::swap(&mut x, &mut y);
        let step = (rho - prev).abs();
        if iter > 10 && step < tol {
            let ratio = step / prev_step;
            let remaining = if ratio < 1.0 { step * ratio / (1.0 - ratio) } else { f64::INFINITY };
            if step == 0.0 || remaining < tol {
                return Ok(rho + if remaining.is_finite() { remaining } else { 0.0 });
            }
        }
        prev_step = step;
        prev = rho;
    }
    Err(SpectralError::NoConvergence(max_iter))
}

/// `⟨x, Ax⟩ / ⟨x, x⟩` for the normalized adjacency `A`.
pub fn rayleigh_quotient(graph: &RegularGraph, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != graph.n() {
        return Err(SpectralError::LengthMismatch {
            expected: graph.n(),
            found: x.len(),
        });
    }
    if graph.degree() == 0 {
        return Err(SpectralError::ZeroDegree);
    }
    let norm: f64 = x.iter().map(|t| t * t).sum();
    if norm == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    let quad: f64 = graph
        .edges()
        .map(|(u, v)| 2.0 * x[u as usize] * x[v as usize])
        .sum();
    Ok(quad / graph.degree() as f64 / norm)
}

/// Both sides of the Cheeger sandwich `d(1-λ₂)/2 <= h <= d·sqrt(2(1-λ₂))`
/// with `h` computed exactly.
#[derive(Debug, Clone, Serialize)]
pub struct CheegerCheck {
    pub lambda2: f64,
    pub lower: f64,
    pub h: f64,
    pub upper: f64,
    pub ok: bool,
}

pub fn cheeger_check(graph: &RegularGraph) -> Result<CheegerCheck, SpectralError> {
    let lambda2 = lambda2(graph, DENSE_TOL)?;
    let h = edge_expansion_exact(graph)?.h;
    let d = graph.degree() as f64;
    let gap = (1.0 - lambda2).max(0.0);
    let lower = d * gap / 2.0;
    let upper = d * (2.0 * gap).sqrt();
    Ok(CheegerCheck {
        lambda2,
        lower,
        h,
        upper,
        ok: lower <= h + 1e-9 && h <= upper + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, random_regular_bipartite, tensor_power};
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k4_spectrum() {
        let s = full_spectrum(&complete_graph(4).unwrap()).unwrap();
        assert!(close(s.eigenvalues[0], 1.0, 1e-12));
        for &l in &s.eigenvalues[1..] {
            assert!(close(l, -1.0 / 3.0, 1e-12));
        }
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn cycle_matches_circulant_formula() {
        for n in [5usize, 6, 9, 12] {
            let s = full_spectrum(&cycle_graph(n).unwrap()).unwrap();
            let mut expected: Vec<f64> = (0..n).map(|k| (2.0 * PI * k as f64 / n as f64).cos()).collect();
            expected.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in s.eigenvalues.iter().zip(&expected) {
                assert!(close(*a, *b, 1e-12), "C{n}: {a} vs {b}");
            }
        }
        let c5 = cycle_graph(5).unwrap();
        assert!(close(lambda2(&c5, 1e-9).unwrap(), 0.309017, 1e-6));
        assert!(close(lambda_min(&c5, 1e-9).unwrap(), -0.809017, 1e-6));
    }

    #[test]
    fn tensor_spectrum_is_product_of_clique_spectra() {
        let s = full_spectrum(&tensor_power(3, 2).unwrap()).unwrap();
        let expected = [1.0, 0.25, 0.25, 0.25, 0.25, -0.5, -0.5, -0.5, -0.5];
        for (a, b) in s.eigenvalues.iter().zip(&expected) {
            assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn disconnected_and_empty_conventions() {
        let two_triangles =
            RegularGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(lambda2(&two_triangles, 1e-9).unwrap(), 1.0);
        let empty = RegularGraph::from_edges(4, &[]).unwrap();
        assert_eq!(lambda2(&empty, 1e-9).unwrap(), 1.0);
        assert_eq!(full_spectrum(&empty).unwrap_err(), SpectralError::ZeroDegree);
    }

    #[test]
    fn bipartite_bottom_is_minus_one() {
        let g = random_regular_bipartite(30, 3, 2).unwrap();
        assert!(close(lambda_min(&g, 1e-9).unwrap(), -1.0, 1e-9));
        let parts = g.parts().unwrap();
        let x: Vec<f64> = parts.iter().map(|&p| if p == 0 { 1.0 } else { -1.0 }).collect();
        assert!(close(rayleigh_quotient(&g, &x).unwrap(), -1.0, 1e-12));
    }

    #[test]
    fn rayleigh_examples() {
        let k4 = complete_graph(4).unwrap();
        assert!(close(rayleigh_quotient(&k4, &[1.0; 4]).unwrap(), 1.0, 1e-15));
        assert!(close(rayleigh_quotient(&k4, &[3.0, -1.0, -1.0, -1.0]).unwrap(), -1.0 / 3.0, 1e-15));
        assert_eq!(rayleigh_quotient(&k4, &[0.0; 4]).unwrap_err(), SpectralError::ZeroVector);
        assert!(matches!(
            rayleigh_quotient(&k4, &[1.0; 3]),
            Err(SpectralError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn iterative_agrees_with_dense() {
        for g in [
            random_regular_bipartite(150, 3, 1).unwrap(),
            random_regular_bipartite(200, 6, 2).unwrap(),
            tensor_power(3, 4).unwrap(),
            cycle_graph(31).unwrap(),
        ] {
            let dense = dense_eigenvalues(&g).unwrap();
            let it2 = lambda2_iterative(&g, ITERATIVE_TOL, MAX_ITERATIONS).unwrap();
            let itn = lambda_min_iterative(&g, ITERATIVE_TOL, MAX_ITERATIONS).unwrap();
            assert!(close(it2, dense[1], 1e-6), "{it2} vs {}", dense[1]);
            assert!(close(itn, *dense.last().unwrap(), 1e-6));
        }
    }

    #[test]
    fn cheeger_examples() {
        let k4 = cheeger_check(&complete_graph(4).unwrap()).unwrap();
        assert!(k4.ok);
        assert!(close(k4.lower, 2.0, 1e-9) && close(k4.h, 2.0, 0.0));
        assert!(close(k4.upper, 3.0 * (8.0f64 / 3.0).sqrt(), 1e-9));
        let c6 = cheeger_check(&cycle_graph(6).unwrap()).unwrap();
        assert!(c6.ok);
        assert!(close(c6.lambda2, 0.5, 1e-12) && close(c6.lower, 0.5, 1e-12) && close(c6.upper, 2.0, 1e-12));
        let split =
            RegularGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let c = cheeger_check(&split).unwrap();
        assert!(c.ok && c.h == 0.0 && c.lower == 0.0);
    }
}
