use thiserror::Error;

/// Errors raised by the library. Every operation that can reject its input
/// returns one of these rather than panicking.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation requires an even order, got n = {0}")]
    OddOrder(usize),

    #[error("order n = {n} outside supported range: {reason}")]
    OrderOutOfRange { n: usize, reason: &'static str },

    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("arc endpoints must differ (got {0} twice)")]
    LoopArc(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not a prime congruent to 3 mod 4")]
    NotQuadraticResiduePrime(u64),

    #[error("matrix is not a skew-conference matrix")]
    NotSkewConference,

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed matrix record: {0}")]
    BadRecord(String),

    #[error("malformed fixture: {0}")]
    BadFixture(String),

    #[error("symmetric eigensolver did not converge")]
    EigenSolver,
}

pub type Result<T> = std::result::Result<T, Error>;
