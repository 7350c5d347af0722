use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("stabilizer generators are dependent (rank {rank} < {expected})")]
    DependentStabilizers { rank: usize, expected: usize },

    #[error("code cannot distinguish all Pauli errors on legs {legs:?}")]
    PreconditionViolated { legs: Vec<usize> },

    #[error("invalid leg binding: {0}")]
    InvalidBinding(String),

    #[error("enumeration cap exceeded: {what} needs 2^{needed}, cap is 2^{cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("contracted tensor entry {value} >= 2 for class {class} at {index}")]
    EntryExceedsOne {
        class: usize,
        index: String,
        value: u32,
    },

    #[error("unknown logical class index {0}")]
    BadClass(usize),

    #[error("invalid noise model: {0}")]
    InvalidNoise(String),

    #[error("schedule does not match layout: {0}")]
    ScheduleMismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate fit data: {0}")]
    DegenerateData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
