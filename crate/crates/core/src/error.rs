use thiserror::Error;

use crate::mixed_sum::MixedSum;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygonal order {0} is not supported (only 4 and 8)")]
    UnsupportedOrder(u32),

    #[error("invalid mixed sum {input:?}: {reason}")]
    SumSyntax { input: String, reason: String },

    #[error("invalid form {input:?}: {reason}")]
    FormSyntax { input: String, reason: String },

    #[error("invalid matrix {input:?}: {reason}")]
    MatrixSyntax { input: String, reason: String },

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("integer overflow")]
    Overflow,

    #[error("search bound {0} is below 61")]
    BoundTooSmall(u64),

    #[error("reduction plan needs at least one octagonal coefficient")]
    NoOctagonals,

    #[error("{sum}: every n <= {bound} is represented but the 19-integer criterion fails")]
    Indeterminate { sum: MixedSum, bound: u64 },

    #[error("{sum}: criterion says {criterion} but the scan to {bound} found truant {truant:?}")]
    CriterionMismatch {
        sum: MixedSum,
        criterion: bool,
        truant: Option<u64>,
        bound: u64,
    },

    #[error("cannot escalate {0}: it is universal")]
    UniversalParent(MixedSum),

    #[error("escalation did not stop at arity 6: {0} arity-7 candidates remain")]
    NoQuiescence(usize),

    #[error("witness conditions fail: {0}")]
    WitnessRejected(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("fixture {id}: {reason}")]
    Fixture { id: String, reason: String },
}
