use thiserror::Error;

/// Errors raised while building or transforming graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("graph is not regular: vertex {vertex} has degree {found}, expected {expected}")]
    NonRegular {
        vertex: u32,
        found: usize,
        expected: usize,
    },
    #[error("gadget expansion needs a 3-regular base graph, got degree {0}")]
    NotCubic(usize),
    #[error("graph has {size} vertices, above the cap of {cap}")]
    SizeCap { size: u128, cap: usize },
    #[error("degree {d} exceeds part size {half}")]
    DegreeTooLarge { d: usize, half: usize },
    #[error("random graph generation gave up after {0} attempts")]
    GenerationTimeout(usize),
    #[error("signing has {found} entries but the graph has {expected} edges")]
    SigningMismatch { expected: usize, found: usize },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(u32),
    #[error("graph has {n} vertices, above the exhaustive cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed graph file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no recoverable gadget structure: {0}")]
    NoGadgetStructure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("dense spectrum requested for {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is 0-regular; the normalized adjacency is undefined")]
    ZeroDegree,
    #[error("power iteration did not converge in {0} iterations")]
    NoConvergence(usize),
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector has length {found}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ColoringError {
    #[error("coloring is bound to a different graph ({0})")]
    BindingMismatch(String),
    #[error("color {color} at vertex {vertex} is outside [0, {q})")]
    InvalidColor { vertex: usize, color: u32, q: usize },
    #[error("coloring needs {needed} for this operation, got {found}")]
    InvalidQ { needed: String, found: usize },
    #[error("graph carries no gadget structure")]
    NoGadgetMeta,
    #[error("graph carries no bipartition")]
    NotBipartite,
    #[error("tau must lie in [0, 1], got {0}")]
    BadTau(f64),
    #[error("parts of size {0} are not a multiple of q-1 = {1}")]
    BadPartSize(usize, usize),
    #[error("graph is not a tensor power of a complete graph")]
    NotTensor,
    #[error("enumeration over {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("more than {0} proper colorings")]
    TooManyColorings(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    #[error("code members are bound to different graphs or palettes")]
    MixedBinding,
    #[error("code set is empty")]
    Empty,
    #[error("{what} count {count} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegimeError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("q = {0} is too large for permutation enumeration")]
    QTooLarge(usize),
    #[error("precondition failed: {0}")]
    PreconditionFail(String),
    #[error("{0} color classes exceed the enumeration cap")]
    TooManyClasses(u128),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Code(#[from] CodeError),
}
