use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid eigenspace ordering: {0}")]
    InvalidOrdering(String),

    #[error("eigenspace index {index} out of range for {m} eigenspaces")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("k = {k} is out of range: need 2 <= k <= {max} (graph has {m} eigenspaces)")]
    KOutOfRange { k: usize, m: usize, max: usize },

    #[error("not a design: residual {residual:e} on eigenspace {eigenspace}")]
    NotADesign { residual: f64, eigenspace: usize },

    #[error("weight {value:e} at vertex {vertex} is negative")]
    NegativeWeight { vertex: usize, value: f64 },

    #[error("linear program infeasible (phase-one residual {residual:e})")]
    LpInfeasible { residual: f64 },

    #[error("linear program did not terminate within {iterations} pivots")]
    LpIterationLimit { iterations: usize },

    #[error("guard exceeded: {what} = {value} > {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("degenerate configuration: all points coincide")]
    DegenerateConfiguration,

    #[error("rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("size mismatch: {left} vs {right} points")]
    SizeMismatch { left: usize, right: usize },

    #[error("epsilon {eps} leaves the eigenvalue cone (min constraint {min_constraint:e})")]
    EpsilonTooLarge { eps: f64, min_constraint: f64 },

    #[error("eigenvalues rejected: {0}")]
    InvalidEigenvalues(String),

    #[error("basis is not orthonormal (max deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("simplex input: {n} points in dimension {dim}; need dim <= n - 2")]
    SimplexInput { n: usize, dim: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotADesign { .. } | Error::NegativeWeight { .. } => 2,
            Error::GuardExceeded { .. } => 3,
            Error::NonConvergence { .. }
            | Error::LpInfeasible { .. }
            | Error::LpIterationLimit { .. }
            | Error::NotOrthonormal { .. } => 4,
            _ => 1,
        }
    }
}
