use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("signal {0} is sent with probability zero")]
    DegenerateSignal(usize),
    #[error("beliefs do not average back to the prior")]
    PlausibilityViolation,
    #[error("no belief-dominant equilibrium: the prior is not a mixture of equilibrium beliefs")]
    NoBeliefDominantPbe,
    #[error("concavification needs exactly two states, got {0}")]
    NotBinary(usize),
    #[error("persuasion value is zero; the ratio is undefined")]
    ZeroOpValue,
    #[error("saddle-point belief has a zero entry at state {0}")]
    BoundaryPrior(usize),
    #[error("bias must be positive, got {0}")]
    NonPositiveBias(f64),
    #[error("partition with {requested} intervals is too fine; at most {max} exist for this bias")]
    PartitionTooFine { requested: usize, max: usize },
    #[error("bias grid too small: {0}")]
    GridTooSmall(String),
}
