use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid leaf root: {0}")]
    InvalidLeafRoot(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("requires chordal graph")]
    NotChordal,
    #[error("not a clique: {0}")]
    NotAClique(String),
    #[error("no connector: tree is a path")]
    NoConnector,
    #[error("node {0:?} is not a leaf")]
    NotALeaf(String),
    #[error("subtrees not disjoint")]
    SubtreesNotDisjoint,
    #[error("node set does not induce a connected subtree")]
    NotConnected,
    #[error("Helly violation: model invalid")]
    HellyViolation,
    #[error("family defined for n >= 3")]
    FamilyRange,
    #[error("n = {0} outside supported range 3..=16")]
    UnsupportedN(usize),
    #[error("construction invalid: {0}")]
    ConstructionInvalid(String),
    #[error("not a model of R_n: {0}")]
    NotAModelOfRn(String),
    #[error("topology not in canonical form")]
    NonCanonicalTopology,
    #[error("malformed system: {0}")]
    MalformedSystem(String),
    #[error("witness not strictly feasible")]
    NotStrictlyFeasible,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
