use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("cylinder of order {order} does not fit in a word of length {len}")]
    CylinderTooLong { order: usize, len: usize },
    #[error("prefix of length {have} is too short, {need} symbols required")]
    PrefixTooShort { need: u128, have: u128 },
    #[error("invalid cylinder: {0}")]
    InvalidCylinder(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("weights are not invariant on the cycle through point {point}")]
    NonInvariantWeights { point: usize },
    #[error("stationary vector is not invariant: (πP)[{state}] = {got}, π[{state}] = {want}")]
    NotStationary { state: usize, got: String, want: String },
    #[error("rotation precision exhausted: position {position} exceeds the budget of {precision} digits")]
    PrecisionExhausted { position: usize, precision: u32 },
    #[error("measure is not ergodic: {0}")]
    NotErgodic(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no certified word of length <= {max_len} for order {order} at tolerance {eps}")]
    ConstructionExhausted { order: usize, eps: String, max_len: u64 },
    #[error("approximant certificate {certificate} is not below {bound}")]
    VerificationFailed { certificate: String, bound: String },
    #[error("schedule condition ({condition}) violated at stage {stage}")]
    ScheduleViolation { condition: &'static str, stage: usize },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("position {position} lies beyond the built schedule ({built} symbols)")]
    BeyondSchedule { position: u128, built: u128 },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}
