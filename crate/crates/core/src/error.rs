use thiserror::Error;

/// Errors raised by graph construction, the numerical kernels and the checks built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex {0} is isolated (degree 0)")]
    IsolatedVertex(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("eigenvalue {0:e} is negative beyond the clamping threshold")]
    NegativeEigenvalue(f64),

    #[error("spectrum sums to {0}, expected 1")]
    NotNormalized(f64),

    #[error("construction identity failed: {0}")]
    IdentityFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
