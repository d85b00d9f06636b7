use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use chroma_core::codes::{
    exact_max_packing, greedy_pack, verify_delta_distinct, CodeSet, DeltaCheck, Family, Provenance, Sampler,
};
use chroma_core::colorings::{distance_with, first_violation, DistanceMethod};
use chroma_core::graphs::{
    complete_graph, cycle_graph, gadget_expand, petersen, random_regular_bipartite, recover_gadget_meta,
    search_low_lambda_signing, tensor_power, two_lift, Construction, RegularGraph, Signing,
};
use chroma_core::rational::{format_fraction, parse_fraction, Fraction};
use chroma_core::regimes::{regime_map_sweep, unique_regime_certificate, FamilySpec, RegimeRow, SweepConfig};
use chroma_core::seeds::stream_rng;
use chroma_core::spectral::{self, DENSE_CAP, DENSE_TOL};
use chroma_core::Coloring;

use crate::args::*;
use crate::files::{emit, fraction, load_coloring, load_graph, open_out, save_graph, to_json, Sidecar};

/// `Ok(false)` means a check ran and failed.
pub type Outcome = Result<bool>;

fn json_only(g: &Global, command: &str) -> Result<()> {
    if g.format == Some(Format::Csv) {
        bail!("{command} writes json only");
    }
    Ok(())
}

fn k33() -> Result<RegularGraph> {
    let edges: Vec<(u32, u32)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    Ok(RegularGraph::from_edges_with_parts(6, &edges, vec![0, 0, 0, 1, 1, 1])?)
}

pub fn construct(g: &Global, args: &ConstructArgs) -> Outcome {
    json_only(g, "construct")?;
    let mut seed = None;
    let (graph, params) = match &args.kind {
        ConstructKind::Complete { q } => (complete_graph(*q)?, json!({ "q": q })),
        ConstructKind::Cycle { n } => (cycle_graph(*n)?, json!({ "n": n })),
        ConstructKind::Tensor { q, power } => (tensor_power(*q, *power)?, json!({ "q": q, "N": power })),
        ConstructKind::Gadget { base } => {
            let b = match base.as_str() {
                "k4" => complete_graph(4)?,
                "k33" => k33()?,
                "petersen" => petersen(),
                path => load_graph(Path::new(path))?,
            };
            (gadget_expand(&b)?, json!({ "base": base, "base_n": b.n() }))
        }
        ConstructKind::RandomBipartite { half, d } => {
            seed = Some(g.seed);
            (random_regular_bipartite(*half, *d, g.seed)?, json!({ "half": half, "d": d }))
        }
        ConstructKind::TwoLift {
            graph,
            signing,
            restarts,
        } => {
            seed = Some(g.seed);
            let base = load_graph(graph)?;
            let s = match signing {
                SigningKind::Random => Signing::random(&base, &mut stream_rng(g.seed, 0)),
                SigningKind::Search => search_low_lambda_signing(&base, *restarts, g.seed)?.signing,
            };
            let lifted = two_lift(&base, &s)?;
            let params = json!({
                "base": graph.display().to_string(),
                "base_id": base.id(),
                "signing": format!("{signing:?}").to_lowercase(),
                "restarts": restarts,
                "signs": s.signs(),
            });
            (lifted, params)
        }
    };
    let (lambda2, lambda_min) = if args.with_spectrum {
        (
            Some(spectral::lambda2(&graph, DENSE_TOL)?),
            Some(spectral::lambda_min(&graph, DENSE_TOL)?),
        )
    } else {
        (None, None)
    };
    let sidecar = Sidecar {
        graph_id: graph.id(),
        n: graph.n(),
        d: graph.degree(),
        construction: graph.construction().clone(),
        seed,
        params,
        lambda2,
        lambda_min,
    };
    match &g.out {
        Some(path) => save_graph(path, &graph, &sidecar)?,
        None => emit(None, &chroma_core::graphs::io::write_graph(&graph))?,
    }
    eprintln!("graph {}: n={} d={}", graph.id(), graph.n(), graph.degree());
    Ok(true)
}

#[derive(Serialize)]
struct SpectrumReport {
    eigenvalues: Option<Vec<f64>>,
    lambda2: f64,
    lambda_min: f64,
    residual: Option<f64>,
}

pub fn spectrum(g: &Global, args: &SpectrumArgs) -> Outcome {
    json_only(g, "spectrum")?;
    let graph = load_graph(&args.graph)?;
    let report = if graph.n() <= DENSE_CAP {
        let s = spectral::full_spectrum(&graph)?;
        SpectrumReport {
            lambda2: s.lambda2(),
            lambda_min: s.lambda_min(),
            residual: Some(s.residual),
            eigenvalues: Some(s.eigenvalues),
        }
    } else {
        SpectrumReport {
            eigenvalues: None,
            lambda2: spectral::lambda2(&graph, DENSE_TOL)?,
            lambda_min: spectral::lambda_min(&graph, DENSE_TOL)?,
            residual: None,
        }
    };
    emit(g.out.as_deref(), &to_json(&report)?)?;
    Ok(true)
}

pub fn distance(g: &Global, args: &DistanceArgs) -> Outcome {
    json_only(g, "distance")?;
    let given = args.graph.as_deref().map(load_graph).transpose()?;
    let (x, from_x) = load_coloring(&args.x, given.as_ref())?;
    let graph = given.or(from_x);
    let (y, _) = load_coloring(&args.y, graph.as_ref())?;
    let method = match args.method {
        MethodArg::Auto => DistanceMethod::Auto,
        MethodArg::BruteForce => DistanceMethod::BruteForce,
        MethodArg::Assignment => DistanceMethod::Assignment,
    };
    let d = distance_with(&x, &y, method)?;
    emit(g.out.as_deref(), &to_json(&d)?)?;
    Ok(true)
}

/// Gadget graphs loaded without a sidecar get their layout back here.
fn with_gadget_meta(graph: RegularGraph) -> Result<RegularGraph> {
    if graph.gadget_meta().is_some() {
        return Ok(graph);
    }
    let meta = recover_gadget_meta(&graph).context("the gadget sampler needs a gadget graph")?;
    Ok(graph.with_construction(Construction::Gadget(meta)))
}

pub fn pack(g: &Global, args: &PackArgs) -> Outcome {
    json_only(g, "pack")?;
    let delta = fraction(&args.delta, "delta")?;
    let mut graph = load_graph(&args.graph)?;
    let sampler = match args.sampler {
        SamplerArg::Gadget => {
            graph = with_gadget_meta(graph)?;
            Sampler::Gadget
        }
        SamplerArg::BipartiteBiased => {
            let d = graph.degree() as f64;
            Sampler::BipartiteBiased {
                tau: args.tau.unwrap_or(1.0 / (8.0 * d * d)),
            }
        }
        SamplerArg::RandomGreedy => Sampler::RandomGreedy,
        SamplerArg::Enumerated => Sampler::Enumerated,
    };
    let result = greedy_pack(&graph, args.q, &sampler, delta, args.target, args.budget, g.seed)?;
    eprintln!(
        "code of size {} (min distance {:?}) after {} draws{}",
        result.code.len(),
        result.code.min_dist,
        result.code.provenance.draws,
        if result.exhausted { ", budget exhausted" } else { "" }
    );
    emit(g.out.as_deref(), &to_json(&result.code)?)?;
    Ok(true)
}

pub fn exact_f(g: &Global, args: &ExactFArgs) -> Outcome {
    json_only(g, "exact-f")?;
    let delta = fraction(&args.delta, "delta")?;
    let graph = load_graph(&args.graph)?;
    let r = exact_max_packing(&graph, args.q, delta)?;
    eprintln!("f = {} over {} proper colorings", r.size, r.colorings);
    emit(g.out.as_deref(), &to_json(&r)?)?;
    Ok(true)
}

pub fn certify(g: &Global, args: &CertifyArgs) -> Outcome {
    json_only(g, "certify")?;
    let delta = fraction(&args.delta, "delta")?;
    let lambda = fraction(&args.lambda, "lambda")?;
    let c = unique_regime_certificate(args.q, delta, lambda)?;
    let report = json!({
        "q": args.q,
        "delta": format_fraction(&delta),
        "lambda": format_fraction(&lambda),
        "certificate": c,
    });
    emit(g.out.as_deref(), &to_json(&report)?)?;
    Ok(true)
}

fn fr(p: i64, r: i64) -> Fraction {
    Fraction::new(p, r)
}

/// Built-in q=3 sweep.
pub fn default_sweep() -> SweepConfig {
    SweepConfig {
        q: 3,
        deltas: vec![fr(1, 5), fr(6, 25), fr(1, 3), fr(1, 2), fr(2, 3)],
        lambdas: vec![fr(1, 100), fr(1, 5), fr(1, 4), fr(2, 5), fr(1, 2), fr(9, 10)],
        families: vec![
            FamilySpec {
                family: Family::RandomBipartite { d: 3, tau: None },
                sizes: vec![50, 200],
            },
            FamilySpec {
                family: Family::RandomBipartite { d: 25, tau: None },
                sizes: vec![1000],
            },
            FamilySpec {
                family: Family::TensorLift { power: 2, restarts: 4 },
                sizes: vec![0, 1],
            },
            FamilySpec {
                family: Family::Gadget,
                sizes: vec![3],
            },
        ],
        seeds: vec![0],
        budget: 200,
        target: 16,
    }
}

const HEADER: [&str; 9] = [
    "q",
    "delta",
    "lambda",
    "classification",
    "evidence_kind",
    "n",
    "lambda2_measured",
    "code_size",
    "min_dist",
];

/// Grid points already in a CSV from an earlier run. A trailing partial
/// line left by an interrupted write is cut off first.
fn completed_points(path: &Path) -> Result<HashSet<(Fraction, Fraction)>> {
    let mut bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if !bytes.is_empty() && bytes.last() != Some(&b'\n') {
        let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        bytes.truncate(keep);
        fs::write(path, &bytes)?;
    }
    let mut reader = csv::Reader::from_reader(bytes.as_slice());
    if !bytes.is_empty() && reader.headers()?.iter().ne(HEADER) {
        bail!("{} does not have the regime-map header", path.display());
    }
    let mut done = HashSet::new();
    for row in reader.deserialize::<RegimeRow>() {
        let row = row.with_context(|| format!("reading {}", path.display()))?;
        let key = (
            parse_fraction(&row.delta).map_err(anyhow::Error::msg)?,
            parse_fraction(&row.lambda).map_err(anyhow::Error::msg)?,
        );
        done.insert(key);
    }
    Ok(done)
}

pub fn regime_map(g: &Global, args: &RegimeMapArgs) -> Outcome {
    let config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<SweepConfig>(&text).with_context(|| format!("parsing config {}", path.display()))?
        }
        None => default_sweep(),
    };
    if args.show_config {
        emit(g.out.as_deref(), &to_json(&config)?)?;
        return Ok(true);
    }
    let format = g.format.unwrap_or(Format::Csv);
    let mut skip = HashSet::new();
    let mut append = false;
    if args.resume {
        let Some(path) = g.out.as_deref() else {
            bail!("--resume needs --out");
        };
        if format != Format::Csv {
            bail!("--resume needs csv output");
        }
        if path.exists() {
            skip = completed_points(path)?;
            append = fs::metadata(path)?.len() > 0;
        }
    }
    let sink: Box<dyn Write> = match (g.out.as_deref(), append) {
        (Some(path), true) => Box::new(fs::OpenOptions::new().append(true).open(path)?),
        (out, _) => open_out(out)?,
    };
    let summary = match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
            if !append {
                w.write_record(HEADER)?;
                w.flush()?;
            }
            let mut chunk = None;
            let summary = regime_map_sweep::<anyhow::Error>(&config, &skip, |row| {
                if chunk.as_ref().is_some_and(|d| d != &row.delta) {
                    w.flush()?;
                }
                chunk = Some(row.delta.clone());
                w.serialize(row)?;
                Ok(())
            })?;
            w.flush()?;
            summary
        }
        Format::Json => {
            // One JSON object per line.
            let mut w = sink;
            let summary = regime_map_sweep::<anyhow::Error>(&config, &skip, |row| {
                writeln!(w, "{}", serde_json::to_string(row)?)?;
                Ok(())
            })?;
            w.flush()?;
            summary
        }
    };
    eprintln!(
        "{} rows written, {} skipped, {} instances built",
        summary.rows_written, summary.rows_skipped, summary.instances_built
    );
    for (family, size, seed, err) in &summary.build_failures {
        eprintln!("warning: {family} size {size} seed {seed} failed to build: {err}");
    }
    Ok(true)
}

#[derive(Serialize)]
struct ProperCheck {
    source: String,
    proper: bool,
    violation: Option<(u32, u32)>,
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    colorings: Vec<ProperCheck>,
    min_dist: Option<usize>,
    worst_pair: Option<(usize, usize)>,
    delta: Option<String>,
    delta_check: Option<DeltaCheck>,
}

pub fn verify(g: &Global, args: &VerifyArgs) -> Outcome {
    json_only(g, "verify")?;
    let graph = load_graph(&args.graph)?;
    let mut members: Vec<(String, Coloring)> = Vec::new();
    for path in &args.colorings {
        let (c, _) = load_coloring(path, Some(&graph))?;
        members.push((path.display().to_string(), c));
    }
    if let Some(path) = &args.code {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let code: CodeSet = serde_json::from_str(&text).with_context(|| format!("parsing code {}", path.display()))?;
        for (i, c) in code.members.into_iter().enumerate() {
            c.check_against(&graph)
                .with_context(|| format!("member {i} of {} does not fit the graph", path.display()))?;
            members.push((format!("{}#{i}", path.display()), c));
        }
    }
    if members.is_empty() {
        bail!("no colorings given");
    }
    let delta = args.delta.as_deref().map(|d| fraction(d, "delta")).transpose()?;
    let mut checks = Vec::new();
    for (source, c) in &members {
        let violation = first_violation(&graph, c)?;
        if let Some((u, v)) = violation {
            eprintln!("{source}: edge {u}-{v} has both ends colored {}", c.color(u as usize));
        }
        checks.push(ProperCheck {
            source: source.clone(),
            proper: violation.is_none(),
            violation,
        });
    }
    let code = CodeSet {
        members: members.into_iter().map(|(_, c)| c).collect(),
        delta: delta.unwrap_or_else(|| Fraction::new(0, 1)),
        min_dist: None,
        provenance: Provenance {
            sampler: "files".into(),
            seed: None,
            draws: 0,
        },
    };
    let check = verify_delta_distinct(&code)?;
    let ok = checks.iter().all(|c| c.proper) && (delta.is_none() || check.ok);
    if delta.is_some() && !check.ok {
        eprintln!(
            "pair {:?} is at distance {:?}, below {}",
            check.worst_pair, check.min_dist, check.threshold
        );
    }
    let report = VerifyReport {
        ok,
        colorings: checks,
        min_dist: check.min_dist,
        worst_pair: check.worst_pair,
        delta: delta.map(|d| format_fraction(&d)),
        delta_check: delta.map(|_| check),
    };
    emit(g.out.as_deref(), &to_json(&report)?)?;
    Ok(ok)
}
