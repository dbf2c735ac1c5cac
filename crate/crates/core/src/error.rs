use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the 128-vertex capacity")]
    Capacity(usize),
    #[error("graph order must be at least 1")]
    EmptyGraph,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("malformed graph6 string: {0}")]
    Graph6(String),
    #[error("invalid parameters: {0}")]
    Domain(String),
    #[error("catalog member H{0} is only available with the `oracle-catalog` feature (unresolved figure)")]
    UnresolvedFigure(usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("power iteration did not converge (residual {residual:e} after {iterations} iterations)")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("vector must be nonzero and match the graph order")]
    BadVector,
    #[error("empty search space")]
    EmptySearchSpace,
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("stale Perron data: residual {0:e}")]
    StalePerron(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
