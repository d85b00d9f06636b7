//! Grid sweep over `(δ, λ)` classifying each point by the evidence found.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::unique_regime_certificate;
use crate::codes::{Family, Instance};
use crate::error::RegimeError;
use crate::rational::{format_fraction, Fraction};
use crate::seeds::derive_seed;
use crate::spectral::DENSE_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    CertifiedUnique,
    CounterexampleExists,
    Unknown,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::CertifiedUnique => "certified-unique",
            Classification::CounterexampleExists => "counterexample-exists",
            Classification::Unknown => "unknown",
        }
    }
}

/// A family and the sizes to build it at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub q: usize,
    #[serde(with = "crate::rational::vec_as_string")]
    pub deltas: Vec<Fraction>,
    #[serde(with = "crate::rational::vec_as_string")]
    pub lambdas: Vec<Fraction>,
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Sampler draws per greedy packing.
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Stop packing once a code this large is found.
    #[serde(default = "default_target")]
    pub target: usize,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_budget() -> usize {
    200
}

fn default_target() -> usize {
    16
}

/// One CSV row. Evidence columns are empty when they do not apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeRow {
    pub q: usize,
    pub delta: String,
    pub lambda: String,
    pub classification: String,
    pub evidence_kind: String,
    pub n: Option<usize>,
    pub lambda2_measured: Option<f64>,
    pub code_size: Option<usize>,
    pub min_dist: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows_written: usize,
    pub rows_skipped: usize,
    pub instances_built: usize,
    /// `(family, size, seed, error)` for instances that failed to build.
    pub build_failures: Vec<(String, usize, u64, String)>,
}

struct Built {
    family: Family,
    seed: u64,
    instance: Instance,
}

#[derive(Clone)]
struct Evidence {
    kind: &'static str,
    size: usize,
    min_dist: Option<usize>,
}

/// Classifies every grid point, `δ` outer and `λ` inner, and hands rows to
/// `sink` in that order. Points in `skip` (as `(δ, λ)`) are left out, which
/// is how an interrupted sweep resumes. Rows are produced one `δ` at a time
/// so the sink can flush between chunks.
///
/// A point is `certified-unique` when the exact certificate holds. Otherwise
/// it is `counterexample-exists` when some built instance with measured
/// `λ₂ <= λ` (up to the dense solver tolerance) carries a δ-distinct code of size at least 2 (the largest such
/// code is reported, first instance on ties), and `unknown` otherwise.
/// Points with `δ > 1 - 1/q` are `unknown` with evidence `trivial`: no graph
/// has two colorings that far apart.
pub fn regime_map_sweep<E>(
    config: &SweepConfig,
    skip: &HashSet<(Fraction, Fraction)>,
    mut sink: impl FnMut(&RegimeRow) -> Result<(), E>,
) -> Result<SweepSummary, E>
where
    E: From<RegimeError>,
{
    let q = config.q;
    if q < 3 {
        return Err(RegimeError::OutOfRange(format!("q must be at least 3, got {q}")).into());
    }
    let mut summary = SweepSummary::default();
    let tasks: Vec<(Family, usize, u64)> = config
        .families
        .iter()
        .flat_map(|spec| {
            spec.sizes
                .iter()
                .flat_map(move |&size| config.seeds.iter().map(move |&seed| (spec.family.clone(), size, seed)))
        })
        .collect();
    let pending: Vec<(Fraction, Fraction)> = config
        .deltas
        .iter()
        .flat_map(|&d| config.lambdas.iter().map(move |&l| (d, l)))
        .filter(|key| !skip.contains(key))
        .collect();
    let results: Vec<Result<Instance, RegimeError>> = if pending.is_empty() {
        Vec::new()
    } else {
        tasks
            .par_iter()
            .map(|(family, size, seed)| family.build(q, *size, *seed).map_err(RegimeError::from))
            .collect()
    };
    let mut built = Vec::new();
    for ((family, size, seed), result) in tasks.iter().zip(results) {
        match result {
            Ok(instance) => built.push(Built {
                family: family.clone(),
                seed: derive_seed(*seed, *size as u64),
                instance,
            }),
            Err(e) => summary
                .build_failures
                .push((family.name().to_string(), *size, *seed, e.to_string())),
        }
    }
    summary.instances_built = built.len();

    let trivial = Fraction::new(q as i64 - 1, q as i64);
    for &delta in &config.deltas {
        let lambdas: Vec<Fraction> = config
            .lambdas
            .iter()
            .copied()
            .filter(|&l| !skip.contains(&(delta, l)))
            .collect();
        summary.rows_skipped += config.lambdas.len() - lambdas.len();
        if lambdas.is_empty() {
            continue;
        }
        let certified: Vec<bool> = lambdas
            .iter()
            .map(|&l| unique_regime_certificate(q, delta, l).is_ok_and(|c| c.certified))
            .collect();
        // Codes are needed only on instances some uncertified point can use.
        let loosest = lambdas
            .iter()
            .zip(&certified)
            .filter(|(_, &c)| !c)
            .map(|(l, _)| crate::rational::to_f64(l))
            .fold(f64::NEG_INFINITY, f64::max);
        let evidence: HashMap<usize, Evidence> = if delta > trivial {
            HashMap::new()
        } else {
            built
                .par_iter()
                .enumerate()
                .filter(|(_, b)| b.instance.lambda2 <= loosest + DENSE_TOL)
                .map(|(i, b)| {
                    let (code, kind) = b
                        .family
                        .best_code(&b.instance, q, delta, config.target, config.budget, b.seed)
                        .map_err(RegimeError::from)?;
                    Ok((
                        i,
                        Evidence {
                            kind,
                            size: code.len(),
                            min_dist: code.min_dist,
                        },
                    ))
                })
                .collect::<Result<_, RegimeError>>()?
        };
        for (&lambda, &is_certified) in lambdas.iter().zip(&certified) {
            let mut row = RegimeRow {
                q,
                delta: format_fraction(&delta),
                lambda: format_fraction(&lambda),
                classification: Classification::Unknown.as_str().into(),
                evidence_kind: "none".into(),
                n: None,
                lambda2_measured: None,
                code_size: None,
                min_dist: None,
            };
            if delta > trivial {
                row.evidence_kind = "trivial".into();
            } else if is_certified {
                row.classification = Classification::CertifiedUnique.as_str().into();
                row.evidence_kind = "certificate".into();
            } else {
                let cap = crate::rational::to_f64(&lambda);
                let best = (0..built.len())
                    .filter(|i| built[*i].instance.lambda2 <= cap + DENSE_TOL)
                    .filter_map(|i| evidence.get(&i).map(|e| (i, e)))
                    .filter(|(_, e)| e.size >= 2)
                    .fold(None::<(usize, &Evidence)>, |acc, cur| match acc {
                        Some(a) if a.1.size >= cur.1.size => Some(a),
                        _ => Some(cur),
                    });
                if let Some((i, e)) = best {
                    row.classification = Classification::CounterexampleExists.as_str().into();
                    row.evidence_kind = e.kind.into();
                    row.n = Some(built[i].instance.graph.n());
                    row.lambda2_measured = Some(built[i].instance.lambda2);
                    row.code_size = Some(e.size);
                    row.min_dist = e.min_dist;
                }
            }
            sink(&row)?;
            summary.rows_written += 1;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: i64, r: i64) -> Fraction {
        Fraction::new(p, r)
    }

    fn run(config: &SweepConfig, skip: &HashSet<(Fraction, Fraction)>) -> Vec<RegimeRow> {
        let mut rows = Vec::new();
        regime_map_sweep::<RegimeError>(config, skip, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        rows
    }

    fn small_config() -> SweepConfig {
        SweepConfig {
            q: 3,
            deltas: vec![f(1, 5), f(1, 2), f(2, 3)],
            lambdas: vec![f(1, 5), f(1, 2), f(9, 10)],
            families: vec![
                FamilySpec {
                    family: Family::RandomBipartite { d: 3, tau: None },
                    sizes: vec![20],
                },
                FamilySpec {
                    family: Family::TensorLift { power: 2, restarts: 2 },
                    sizes: vec![0],
                },
            ],
            seeds: vec![1],
            budget: 50,
            target: 4,
        }
    }

    #[test]
    fn grid_order_and_classes() {
        let rows = run(&small_config(), &HashSet::new());
        assert_eq!(rows.len(), 9);
        let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r.delta.as_str(), r.lambda.as_str())).collect();
        assert_eq!(keys[0], ("1/5", "1/5"));
        assert_eq!(keys[8], ("2/3", "9/10"));
        let at = |d: &str, l: &str| rows.iter().find(|r| r.delta == d && r.lambda == l).unwrap();
        assert_eq!(at("2/3", "1/5").classification, "certified-unique");
        // K3 x K3 has λ₂ = 1/4 and carries the coordinate pair at 2/3.
        let tensor = at("2/3", "1/2");
        assert_eq!(tensor.classification, "counterexample-exists");
        assert_eq!((tensor.evidence_kind.as_str(), tensor.n), ("tensor-lift", Some(9)));
        // On the boundary λ = 1/4 the same instance still counts.
        let mut edge = small_config();
        edge.lambdas = vec![f(1, 4)];
        let rows = run(&edge, &HashSet::new());
        assert_eq!(rows[2].classification, "counterexample-exists");
        assert_eq!(at("1/2", "9/10").classification, "counterexample-exists");
    }

    #[test]
    fn resume_skips_and_is_deterministic() {
        let config = small_config();
        let full = run(&config, &HashSet::new());
        let skip: HashSet<_> = [(f(1, 5), f(1, 5)), (f(1, 2), f(1, 2))].into_iter().collect();
        let rest = run(&config, &skip);
        assert_eq!(rest.len(), 7);
        let expected: Vec<_> = full
            .iter()
            .filter(|r| !(r.delta == "1/5" && r.lambda == "1/5") && !(r.delta == "1/2" && r.lambda == "1/2"))
            .cloned()
            .collect();
        assert_eq!(rest, expected);
    }

    #[test]
    fn empty_grid_and_trivial_region() {
        let mut config = small_config();
        config.deltas.clear();
        assert!(run(&config, &HashSet::new()).is_empty());
        config.deltas = vec![f(4, 5)];
        let rows = run(&config, &HashSet::new());
        assert!(rows.iter().all(|r| r.classification == "unknown" && r.evidence_kind == "trivial"));
    }
}
