use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants are coarse on purpose: callers match on the kind, messages carry
/// the detail. `ObstructionAt` reports the tangle slot index where a complex
/// propagation failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid diagram shape: {0}")]
    Shape(String),
    #[error("invalid marked point: {0}")]
    Mark(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field extension degree must be at least 1")]
    DegreeZero,
    #[error("division by zero")]
    DivByZero,
    #[error("exponent {exp} has the wrong parity for d + c = {dc}")]
    Parity { exp: i64, dc: i64 },
    #[error("negative exponent {0} remains after clearing the cusp factor")]
    NegativeExponent(i64),
    #[error("grading modulus {m} is invalid for rotation number {r}")]
    Grading { m: i64, r: i64 },
    #[error("search space of {space} points exceeds the cap of {cap}")]
    Scale { space: u128, cap: u128 },
    #[error("method {0} is unavailable for this input")]
    MethodUnavailable(String),
    #[error("complex propagation obstructed at slot {0}")]
    ObstructionAt(usize),
    #[error("marks are not in A-form: {0}")]
    NotAForm(String),
    #[error("marks are not in SR-form: {0}")]
    NotSRForm(String),
    #[error("values do not define an augmentation")]
    NotAugmentation,
    #[error("point does not satisfy the disk equations")]
    NotASolution,
    #[error("cannot contract a loop edge")]
    LoopEdge,
}

pub type Result<T> = std::result::Result<T, Error>;
