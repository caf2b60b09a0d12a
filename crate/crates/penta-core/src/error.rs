use thiserror::Error;

/// Library-wide error type.
///
/// Variants are grouped by how a caller is expected to react: `Usage`
/// problems are caller bugs (bad flag values, window too small), `Resource`
/// means the request was understood but exceeds a configured ceiling, and
/// `Internal` indicates a broken invariant inside the library itself.
#[derive(Debug, Error)]
pub enum PentaError {
    /// Invalid argument or precondition violation by the caller.
    #[error("usage: {0}")]
    Usage(String),

    /// Request exceeds a configured resource ceiling.
    #[error("resource limit: {what} supports t <= {max} but t = {got} was requested ({hint})")]
    Resource {
        what: &'static str,
        max: u32,
        got: u32,
        hint: &'static str,
    },

    /// Malformed serialized document. `offset` is the byte position in the
    /// input at which parsing failed, when known.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    /// Document parsed but describes an inconsistent graph.
    #[error("invalid graph document: {0}")]
    InvalidDocument(String),

    /// The fit design matrix lost rank: column `col` (0-based, in basis
    /// order) is a linear combination of the columns listed in `depends_on`.
    #[error("rank-deficient design matrix: column {col} ({name}) is linearly dependent on columns {depends_on:?}")]
    RankDeficient {
        col: usize,
        name: String,
        depends_on: Vec<usize>,
    },

    /// A cross-validation gate did not hold. Carries the gate name and what
    /// was observed.
    #[error("gate {gate} failed: {detail}")]
    Gate { gate: &'static str, detail: String },

    /// A consistency check inside an exact computation failed. Never expected
    /// to surface; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, PentaError>;
