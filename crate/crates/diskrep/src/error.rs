use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex id {id} out of range (n = {n})")]
    OutOfRange { line: usize, id: usize, n: usize },
    #[error("layout has no position for vertex {0}")]
    MissingVertex(usize),
    #[error("empty layout")]
    EmptyLayout,
    #[error("search left the region of half-width {bound}")]
    BoundExceeded { bound: i32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
