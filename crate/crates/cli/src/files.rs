//! Graph files with their sidecars, coloring files, and output sinks.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use chroma_core::graphs::io::{parse_graph, write_graph};
use chroma_core::graphs::{Construction, GraphId, RegularGraph};
use chroma_core::rational::{parse_fraction, Fraction};
use chroma_core::Coloring;

/// Provenance written next to a graph file as `<file>.json`.
#[derive(Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub graph_id: GraphId,
    pub n: usize,
    pub d: usize,
    pub construction: Construction,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default)]
    pub lambda2: Option<f64>,
    #[serde(default)]
    pub lambda_min: Option<f64>,
}

pub fn sidecar_path(graph_path: &Path) -> PathBuf {
    let mut s = graph_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Reads a graph file. When a sidecar for the same graph sits next to it,
/// the recorded construction is restored so structure-aware samplers work.
pub fn load_graph(path: &Path) -> Result<RegularGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading graph {}", path.display()))?;
    let graph = parse_graph(&text).with_context(|| format!("parsing graph {}", path.display()))?;
    let side = sidecar_path(path);
    if !side.exists() {
        return Ok(graph);
    }
    let sidecar: Sidecar = serde_json::from_str(&fs::read_to_string(&side)?)
        .with_context(|| format!("parsing sidecar {}", side.display()))?;
    if sidecar.graph_id != graph.id() {
        eprintln!("warning: sidecar {} describes a different graph; ignored", side.display());
        return Ok(graph);
    }
    Ok(graph.with_construction(sidecar.construction))
}

pub fn save_graph(path: &Path, graph: &RegularGraph, sidecar: &Sidecar) -> Result<()> {
    fs::write(path, write_graph(graph)).with_context(|| format!("writing {}", path.display()))?;
    let side = sidecar_path(path);
    fs::write(&side, to_json(sidecar)?).with_context(|| format!("writing {}", side.display()))?;
    Ok(())
}

/// `{"q": .., "colors": [..], "graph": "<path or hash>"}`
#[derive(Debug, Deserialize)]
struct ColoringFile {
    q: usize,
    colors: Vec<u16>,
    graph: String,
}

/// Loads a coloring and binds it to `graph`, or to the graph its `graph`
/// field names when that is a path (relative to the coloring file).
pub fn load_coloring(path: &Path, graph: Option<&RegularGraph>) -> Result<(Coloring, Option<RegularGraph>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading coloring {}", path.display()))?;
    let file: ColoringFile =
        serde_json::from_str(&text).with_context(|| format!("parsing coloring {}", path.display()))?;
    let (bound, loaded) = match GraphId::from_hex(&file.graph) {
        Some(id) => {
            let g = graph.with_context(|| format!("{} names graph {id} by hash; pass --graph", path.display()))?;
            if g.id() != id {
                bail!("{} is bound to graph {id}, not {}", path.display(), g.id());
            }
            (None, None)
        }
        None => {
            let base = path.parent().unwrap_or(Path::new("."));
            let g = load_graph(&base.join(&file.graph))?;
            if let Some(given) = graph {
                if given.id() != g.id() {
                    bail!("{} names a different graph than --graph", path.display());
                }
            }
            (Some(g.clone()), Some(g))
        }
    };
    let g = bound.as_ref().or(graph).expect("a graph is bound");
    let coloring =
        Coloring::new(g, file.q, file.colors).with_context(|| format!("coloring {} does not fit", path.display()))?;
    Ok((coloring, loaded))
}

pub fn fraction(text: &str, what: &str) -> Result<Fraction> {
    parse_fraction(text).map_err(|e| anyhow::anyhow!("--{what}: {e}"))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// `--out` or stdout.
pub fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

pub fn emit(out: Option<&Path>, payload: &str) -> Result<()> {
    let mut w = open_out(out)?;
    w.write_all(payload.as_bytes())?;
    w.flush()?;
    Ok(())
}
