use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid edge {{{0}, {1}}}: {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("graph is not a tree-cograph")]
    NotTreeCograph,
    #[error("graph has stability number greater than two")]
    StabilityTooLarge,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not the complement of a tree")]
    NotACoTree,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("{what} = {value} outside admissible range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("path is not augmenting for the matching")]
    NotAugmenting,
    #[error("matching is not maximal")]
    NotMaximal,
    #[error("matching is not strongly maximal")]
    NotStronglyMaximal,
    #[error("matching is not in canonical gadget form")]
    NotCanonical,
    #[error("rewriting changed matching size from {before} to {after}")]
    CardinalityChanged { before: usize, after: usize },
    #[error("edge {{{0}, {1}}} is not an edge of the source graph")]
    UnknownEdge(usize, usize),

    #[error("coloring is improper: {0} and {1} are adjacent and share a class")]
    ImproperColoring(usize, usize),
    #[error("color class {0} is empty")]
    EmptyClass(usize),
    #[error("color class {0} has more than two vertices")]
    ClassTooLarge(usize),
    #[error("coloring does not match the graph: {0}")]
    MalformedColoring(String),
    #[error("coloring is not a b-coloring")]
    NotABColoring,

    #[error("join window is empty at t = {t}: a = {a} > b = {b}")]
    WindowEmpty { t: usize, a: usize, b: usize },
    #[error("no exact method applies: {n} vertices exceed the exact-search cap {cap}")]
    InstanceTooLargeForExactSearch { n: usize, cap: usize },
    #[error("instance has {n} vertices, over the oracle limit of {max_n}")]
    TooManyVertices { n: usize, max_n: usize },
    #[error("search budget of {0} states exhausted")]
    BudgetExceeded(u64),
}

impl Error {
    pub(crate) fn k_out_of_range(value: usize, lo: usize, hi: usize) -> Self {
        Error::OutOfRange {
            what: "k",
            value,
            lo,
            hi,
        }
    }
}
