use thiserror::Error;

use crate::coloring::CriticalityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed family parameter: {0}")]
    MalformedFamily(String),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("malformed graph6 at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    /// `k < 2p + 1`: the power of the cycle is the complete graph `K_k`.
    #[error(
        "complete-graph regime: C_{k}^{p} is K_{k}; cycle-power results need k >= 2p+1"
    )]
    CompleteGraphRegime { k: usize, p: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("exact solver out of range: order {order} exceeds cap {cap}")]
    SolverOutOfRange { order: usize, cap: usize },

    #[error("combinatorial budget of {budget} exceeded")]
    BudgetExceeded {
        budget: u64,
        partial: Box<CriticalityReport>,
    },

    #[error("partition is not equitable: vertices {u} and {v} of block {block} see {count_u} and {count_v} neighbours in block {target}")]
    NotEquitable {
        block: usize,
        target: usize,
        u: usize,
        v: usize,
        count_u: usize,
        count_v: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error(
        "power iteration did not converge after {iterations} iterations (best estimate {estimate})"
    )]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error("order {n} exceeds the exhaustive cap {cap}; use heuristic mode")]
    ExhaustiveCap { n: usize, cap: usize },

    #[error("corrupt cache record: {0}")]
    CorruptRecord(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
