use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge size r must be at least 2, got {0}")]
    InvalidRank(usize),

    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<usize>, reason: String },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("vertex {vertex} does not exist (n = {n})")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("edge {0:?} is not present")]
    EdgeNotFound(Vec<usize>),

    #[error("edge sizes differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown anchor {0:?}")]
    UnknownAnchor(String),

    #[error("polynomial does not have matching-polynomial shape: {0}")]
    Shape(String),

    #[error("root finding did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        partial: Vec<Complex64>,
    },

    #[error("no real root in [0, {bound}]")]
    NoRealRoot { bound: f64 },

    #[error("hypergraph is not a forest of ordinary graph edges (r = 2): {0}")]
    NotForest(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
