//! Certificates and structural checks for the regimes of `(δ, λ)`: when a
//! one-sided expander admits no pair of δ-distinct colorings, when it admits
//! a bounded number, and when exponentially many.

mod partition;
mod sigma;
mod sweep;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colorings::{Color, Coloring};
use crate::error::RegimeError;
use crate::graphs::{subset_measures, RegularGraph};
use crate::rational::Fraction;
use crate::spectral::{self, DENSE_TOL};

pub use partition::{
    near_independent_partition, near_independent_union_bound, PartitionComponent, PartitionReport, UnionBound,
};
pub use sigma::{sigma_profile, sigma_profile_with, SigmaEntry, SigmaProfile};
pub use sweep::{regime_map_sweep, Classification, FamilySpec, RegimeRow, SweepConfig, SweepSummary};

type Exact = Ratio<i128>;

fn exact(f: &Fraction) -> Exact {
    Exact::new(*f.numer() as i128, *f.denom() as i128)
}

fn exact_to_f64(x: &Exact) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Both sides of the unique-regime inequality
/// `(q-1)(1-δ)² + (1-(q-1)(1-δ))² < 1 - (1 - 1/(q-1)) / (1-λ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniqueCertificate {
    pub certified: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// Exact sides as `p/r`, when λ was given exactly.
    pub lhs_exact: Option<String>,
    pub rhs_exact: Option<String>,
}

fn check_certificate_range(q: usize, delta: &Exact) -> Result<(), RegimeError> {
    if q < 3 {
        return Err(RegimeError::OutOfRange(format!("q must be at least 3, got {q}")));
    }
    let qq = q as i128;
    let low = Exact::new(qq - 2, qq - 1);
    let high = Exact::new(qq - 1, qq);
    if *delta < low || *delta > high {
        return Err(RegimeError::OutOfRange(format!(
            "delta must lie in [{low}, {high}] for q = {q}, got {delta}"
        )));
    }
    Ok(())
}

fn certificate_lhs(q: usize, delta: &Exact) -> Exact {
    let t = Exact::from(1) - delta;
    let qm1 = Exact::from(q as i128 - 1);
    let rest = Exact::from(1) - qm1 * t;
    qm1 * t * t + rest * rest
}

/// Exact certificate for rational `δ` and `λ`.
pub fn unique_regime_certificate(q: usize, delta: Fraction, lambda: Fraction) -> Result<UniqueCertificate, RegimeError> {
    let delta = exact(&delta);
    let lambda = exact(&lambda);
    check_certificate_range(q, &delta)?;
    if lambda <= Exact::from(0) || lambda >= Exact::from(1) {
        return Err(RegimeError::OutOfRange(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let lhs = certificate_lhs(q, &delta);
    let gap = Exact::from(1) - Exact::new(1, q as i128 - 1);
    let rhs = Exact::from(1) - gap / (Exact::from(1) - lambda);
    Ok(UniqueCertificate {
        certified: lhs < rhs,
        lhs: exact_to_f64(&lhs),
        rhs: exact_to_f64(&rhs),
        lhs_exact: Some(lhs.to_string()),
        rhs_exact: Some(rhs.to_string()),
    })
}

/// Certificate against a measured (floating-point) `λ`.
pub fn unique_regime_certificate_real(q: usize, delta: Fraction, lambda: f64) -> Result<UniqueCertificate, RegimeError> {
    let delta = exact(&delta);
    check_certificate_range(q, &delta)?;
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(RegimeError::OutOfRange(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let lhs = exact_to_f64(&certificate_lhs(q, &delta));
    let rhs = 1.0 - (1.0 - 1.0 / (q as f64 - 1.0)) / (1.0 - lambda);
    Ok(UniqueCertificate {
        certified: lhs < rhs,
        lhs,
        rhs,
        lhs_exact: None,
        rhs_exact: None,
    })
}

/// `1 - (1/⌊q/2⌋ + 1/⌈q/2⌉) / 2`, the edge of the exponential regime for
/// bipartite expanders.
pub fn bipartite_threshold(q: usize) -> Result<Fraction, RegimeError> {
    if q < 3 {
        return Err(RegimeError::OutOfRange(format!("q must be at least 3, got {q}")));
    }
    let (lo, hi) = (q as i64 / 2, q.div_ceil(2) as i64);
    Ok(Fraction::from(1) - (Fraction::new(1, lo) + Fraction::new(1, hi)) / 2)
}

/// `1 - 1/λ_min`, a lower bound on the chromatic number.
pub fn hoffman_bound(graph: &RegularGraph) -> Result<f64, RegimeError> {
    let lmin = spectral::lambda_min(graph, DENSE_TOL)?;
    if lmin >= 0.0 {
        return Err(RegimeError::PreconditionFail(format!("smallest eigenvalue {lmin} is not negative")));
    }
    Ok(1.0 - 1.0 / lmin)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependentBound {
    pub w: f64,
    pub e_within: f64,
    /// `(1 + e(A)) / 2`
    pub bound: f64,
    /// `w(A) <= (1 + e(A)) / 2`, checked as `2|A|d <= nd + 2|E(A)|`.
    pub ok: bool,
}

/// Size of a nearly independent set against its internal edge density.
pub fn independent_size_bound(graph: &RegularGraph, a: &[u32]) -> Result<IndependentBound, RegimeError> {
    if graph.degree() == 0 {
        return Err(RegimeError::PreconditionFail("graph has no edges".into()));
    }
    let m = subset_measures(graph, a, None)?;
    let d = graph.degree() as u128;
    let ok = 2 * m.size as u128 * d <= graph.n() as u128 * d + 2 * m.edges_within as u128;
    Ok(IndependentBound {
        w: m.w,
        e_within: m.e_within,
        bound: (1.0 + m.e_within) / 2.0,
        ok,
    })
}

/// Colorings `X_1, …, X_{q-1}` of a bipartite graph where `X_i` colors part
/// 0 uniformly from the first `i` colors and part 1 uniformly from the rest.
pub fn split_palette_colorings(graph: &RegularGraph, q: usize, seed: u64) -> Result<Vec<Coloring>, RegimeError> {
    if q < 3 {
        return Err(RegimeError::OutOfRange(format!("q must be at least 3, got {q}")));
    }
    let parts = match graph.parts() {
        Some(p) => p.to_vec(),
        None => graph
            .bipartition()
            .ok_or(crate::error::ColoringError::NotBipartite)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(q - 1);
    for i in 1..q {
        let colors: Vec<Color> = parts
            .iter()
            .map(|&p| {
                if p == 0 {
                    rng.random_range(0..i) as Color
                } else {
                    rng.random_range(i..q) as Color
                }
            })
            .collect();
        out.push(Coloring::new(graph, q, colors)?);
    }
    Ok(out)
}
