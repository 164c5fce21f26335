use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("set index {index} out of range (m = {m})")]
    SetIndex { index: usize, m: usize },

    #[error("vertex {vertex} out of range ({num_vertices} vertices)")]
    Vertex { vertex: usize, num_vertices: usize },

    #[error("a set cannot be queried against itself through a distance oracle")]
    SelfPair,

    #[error("graph was built with subdivision length {graph}, parameters require {params}")]
    SubdivisionMismatch { graph: usize, params: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
