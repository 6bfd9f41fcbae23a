use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: marker collision at column {column}")]
    MarkerCollision { line: usize, column: usize },
    #[error("line {line}: {what} is not a permutation of 0..{m}")]
    NotPermutation { line: usize, what: &'static str, m: usize },
    #[error("line {line}: expected {expected} entries, found {found}")]
    SizeMismatch { line: usize, expected: usize, found: usize },
    #[error("grid size {0} is unsupported (need 2 <= m <= 255)")]
    BadSize(usize),
    #[error("ineligible commutation of {axis} {index} and {next}")]
    IneligibleCommutation { axis: &'static str, index: usize, next: usize },
    #[error("{0}")]
    PatternNotFound(String),
    #[error("swap markers in columns {a} and {b} are separated by fewer than two vertical lines")]
    SwapSeparation { a: usize, b: usize },
    #[error("state has length {found}, grid has size {expected}")]
    StateSize { expected: usize, found: usize },
    #[error("state is not a permutation")]
    BadState,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("state space of {states} generators exceeds the cap of {cap}")]
    Capacity { states: u128, cap: u128 },
    #[error("grid size {0} exceeds the packed-state limit of 16")]
    TooLarge(usize),
    #[error("quotient window needs generators that are not materialized")]
    WindowTooNarrow,
    #[error("chain references a generator outside the basis")]
    UnknownGenerator,
}

#[derive(Debug, Error)]
pub enum MapError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("grids are not related by the requested move: {0}")]
    Unrelated(String),
    #[error("step {step}: {source}")]
    Step { step: usize, source: Box<MapError> },
}
