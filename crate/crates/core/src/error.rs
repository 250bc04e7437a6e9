use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected: no path between vertex {u} and vertex {v}")]
    Disconnected { u: usize, v: usize },

    #[error("(n={n}, m={m}) is outside the theorem range: {bound}")]
    TheoremRange { n: usize, m: usize, bound: String },

    #[error("malformed labeling: {0}")]
    MalformedLabeling(String),

    #[error("brute-force oracle is capped at {cap} vertices, graph has {vertices}")]
    OracleSize { vertices: usize, cap: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
