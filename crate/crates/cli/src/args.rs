use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chroma", version, about = "Expander graphs, coloring distance and coloring codes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads. Affects speed only, never output.
    #[arg(long, global = true, env = "CHROMA_THREADS")]
    pub threads: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format. Tables default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph and write it in the text format, with a JSON sidecar
    /// next to `--out`.
    Construct(ConstructArgs),
    /// Normalized-adjacency spectrum of a graph file.
    Spectrum(SpectrumArgs),
    /// Permutation-invariant distance between two colorings.
    Distance(DistanceArgs),
    /// Greedy packing of a δ-distinct code from a sampler.
    Pack(PackArgs),
    /// Exact largest δ-distinct code of a tiny graph.
    ExactF(ExactFArgs),
    /// Unique-regime certificate at a single point.
    Certify(CertifyArgs),
    /// Classify a (δ, λ) grid and stream the result as CSV.
    RegimeMap(RegimeMapArgs),
    /// Check properness, pairwise distances and an optional δ promise.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    /// Record λ₂ and λ_min in the sidecar.
    #[arg(long, global = true)]
    pub with_spectrum: bool,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Complete graph K_q.
    Complete {
        #[arg(long)]
        q: usize,
    },
    /// Cycle C_n.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Tensor power of K_q.
    Tensor {
        #[arg(long)]
        q: usize,
        #[arg(long = "N", alias = "power")]
        power: usize,
    },
    /// Replace every edge of a cubic base by a K_{3,3}-minus-an-edge gadget.
    Gadget {
        /// k4, k33, petersen, or a graph file.
        #[arg(long)]
        base: String,
    },
    /// Random d-regular bipartite graph on 2·half vertices.
    RandomBipartite {
        #[arg(long)]
        half: usize,
        #[arg(long)]
        d: usize,
    },
    /// 2-lift of a graph file.
    TwoLift {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = SigningKind::Search)]
        signing: SigningKind,
        /// Restarts for the signing search.
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigningKind {
    Random,
    Search,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// Graph file; optional when the coloring files name a graph path.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    pub x: PathBuf,
    pub y: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    BruteForce,
    Assignment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Gadget,
    BipartiteBiased,
    RandomGreedy,
    Enumerated,
}

#[derive(Debug, Args)]
pub struct PackArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub q: usize,
    /// Relative distance as "p/r".
    #[arg(long)]
    pub delta: String,
    #[arg(long, value_enum)]
    pub sampler: SamplerArg,
    /// Marker probability for the biased sampler; default 1/(8d²).
    #[arg(long)]
    pub tau: Option<f64>,
    /// Sampler draws.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    /// Stop once the code has this many members.
    #[arg(long, default_value_t = usize::MAX)]
    pub target: usize,
}

#[derive(Debug, Args)]
pub struct ExactFArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub q: usize,
    /// Relative distance as "p/r".
    #[arg(long)]
    pub delta: String,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub q: usize,
    /// "p/r" or a decimal.
    #[arg(long)]
    pub delta: String,
    /// "p/r" or a decimal.
    #[arg(long)]
    pub lambda: String,
}

#[derive(Debug, Args)]
pub struct RegimeMapArgs {
    /// JSON sweep config; the built-in q=3 config when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Skip grid points already present in `--out`.
    #[arg(long)]
    pub resume: bool,
    /// Print the effective config as JSON and exit.
    #[arg(long)]
    pub show_config: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Coloring files.
    pub colorings: Vec<PathBuf>,
    /// A code file written by `pack`; its members are checked too.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// Also require every pair to be at distance at least ⌈δn⌉.
    #[arg(long)]
    pub delta: Option<String>,
}
