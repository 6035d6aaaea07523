use thiserror::Error;

/// Crate-wide error type. The CLI maps the variants onto stable exit codes:
/// input errors are 2, precondition failures are 1, oracle refusals are 3.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: parse errors, non-permutation orders, out-of-range
    /// vertex ids, missing orders, coordinate ties.
    #[error("input error: {0}")]
    Input(String),

    /// A required predicate does not hold on the input (e.g. a coloring
    /// routine was handed a graph that fails its recognition check).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An exact oracle refused to answer rather than approximate.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
