use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("degree sum {sum} is odd; half-edge pairing needs an even total")]
    OddDegreeSum { sum: u64 },

    #[error("tau must be > 2 (got {tau}); the degree law is not normalizable otherwise")]
    TauOutOfRange { tau: f64 },

    #[error("epsilon must lie in (0, {max}) for tau = {tau} (got {epsilon})")]
    EpsilonOutOfRange { epsilon: f64, max: f64, tau: f64 },

    #[error("parameter {name} = {value} out of range: {requirement}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error(
        "expected Harris mark count {expected:.3e} exceeds budget {budget:.3e}; \
         use the event-driven engine for this workload"
    )]
    MarkBudgetExceeded { expected: f64, budget: f64 },

    #[error("state space of size {states} exceeds cap {cap}; raise the cap to proceed")]
    StateCapExceeded { states: u128, cap: u128 },

    #[error("vertex {vertex} is not a neighbor of {center}")]
    NotANeighbor { vertex: u32, center: u32 },

    #[error("invalid hierarchical star: {0}")]
    InvalidStar(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid graph file: {0}")]
    InvalidGraphFile(String),

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("epoch {time} lies beyond the horizon {horizon} of a censored run")]
    EpochBeyondHorizon { time: f64, horizon: f64 },

    #[error("need at least one sample")]
    EmptySamples,

    #[error("linear solve did not reach residual {target:.1e} (got {achieved:.1e})")]
    SolveResidual { target: f64, achieved: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
