use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one node")]
    NoNodes,

    #[error("edge {edge}: weight is zero")]
    ZeroWeight { edge: usize },

    #[error("edge {edge}: self-loop on node {node}")]
    SelfLoop { edge: usize, node: usize },

    #[error("edge {edge}: node {node} out of range for {node_count} nodes")]
    NodeOutOfRange {
        edge: usize,
        node: usize,
        node_count: usize,
    },

    #[error("edge {edge}: weight {weight} is not finite")]
    NonFiniteWeight { edge: usize, weight: f64 },

    #[error("node {node} out of range for {node_count} nodes")]
    InvalidNode { node: usize, node_count: usize },

    #[error("nodes {u} and {v} lie in different components")]
    Disconnected { u: usize, v: usize },

    #[error("graph has {components} components, expected a connected graph")]
    NotConnected { components: usize },

    #[error("edge {edge} has negative weight {weight}; an all-positive graph is required")]
    NotAllPositive { edge: usize, weight: f64 },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("factor is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    FactorNotPd { min_eigenvalue: f64 },

    #[error(
        "cut-space Gram matrix is singular (|lambda|min = {min_abs_eigenvalue:e} <= tol {tol:e}); \
         Laplacian has more zero eigenvalues than components"
    )]
    SingularCutGram { min_abs_eigenvalue: f64, tol: f64 },

    #[error("effective resistance routes disagree: cut-basis {cut_basis}, pseudo-inverse {pseudo_inverse}")]
    ResistanceMismatch { cut_basis: f64, pseudo_inverse: f64 },

    #[error("{theorem} precondition failed: {}", reasons.join("; "))]
    HypothesisViolated {
        theorem: &'static str,
        reasons: Vec<String>,
    },

    #[error("null-space system residual {residual:e} exceeds {limit:e}")]
    NullVectorResidual { residual: f64, limit: f64 },

    #[error("trajectory unbounded: state norm {norm:e} exceeds {limit:e} in final window")]
    Unbounded { norm: f64, limit: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for errors that mean "a theorem's hypotheses do not hold" rather
    /// than a malformed input or internal failure.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::HypothesisViolated { .. }
                | Error::Disconnected { .. }
                | Error::NotConnected { .. }
                | Error::SingularCutGram { .. }
                | Error::NotAllPositive { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
