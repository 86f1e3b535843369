use thiserror::Error;

/// Errors raised by the library. Guard violations are reported separately
/// from input validation so that front ends can map them to distinct exit
/// codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("invalid cut set: {0}")]
    InvalidCutSet(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("{what} exceeds guard: {actual} > {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("zero vector has no minimum integer form")]
    ZeroVector,
    #[error("component {0} is negative")]
    NegativeComponent(usize),

    #[error("weights are not in minimum integer form")]
    NotMinimumIntegerForm,
    #[error("minimum Steiner cut value is zero")]
    GammaZero,
    #[error("inequality does not define a facet of the cut dominant: {0}")]
    NotAFacetOfCutDominant(String),
    #[error("weighted Steiner graph is not facet inducing: {0}")]
    NotFacetInducing(String),

    #[error("cut sets are not roots")]
    NotRoots,
    #[error("cut sets do not intersect")]
    NotIntersecting,
    #[error("uncrossing failed for a pair of intersecting roots")]
    UncrossingFailed,
    #[error("family is not laminar")]
    NotLaminar,
    #[error("family is empty")]
    Empty,

    #[error("node name `{0}` already exists")]
    NodeNameClash(String),
    #[error("edge index {0} out of range")]
    BadEdgeIndex(usize),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("node `{0}` does not have degree two")]
    NotDegreeTwo(String),
    #[error("node `{0}` does not have degree three")]
    NotDegreeThree(String),
    #[error("node `{0}` is a terminal")]
    IsTerminal(String),
    #[error("node `{0}` is not a terminal")]
    NotTerminal(String),
    #[error("neighbors of `{0}` are adjacent")]
    NeighborsAdjacent(String),
    #[error("edges incident to `{0}` carry different weights")]
    UnequalIncidentWeights(String),
    #[error("node `{0}` is not a cut node")]
    NotCutNode(String),

    #[error("graph is neither a Steiner tree nor a Steiner cactus")]
    NotTreeOrCactus,
    #[error("too many terminals: {0} > 5")]
    TooManyTerminals(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for guard violations (inputs too large for exhaustive methods).
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::TooManyTerminals(_))
    }

    pub(crate) fn too_large(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::TooLarge {
            what,
            limit,
            actual,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
