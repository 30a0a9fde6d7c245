//! Universal mixed sums of generalized square and octagonal numbers.
//!
//! A mixed sum `a_1 P_4(x_1) + … + b_1 P_8(y_1) + …` is universal when it
//! represents every nonnegative integer. This crate decides representability,
//! computes truants, runs the escalation that enumerates all proper universal
//! sums, and provides the ternary quadratic form machinery (representation
//! counts, residue classes, transformation sets, eigenvector witnesses) used to
//! study individual sums.
//!
//! Form and matrix code is generic over [`Scalar`] (`i32`, `i64`, `i128`);
//! [`Form`] and [`Matrix`] are the `i64` instances.

pub mod error;
pub mod escalation;
pub mod forms;
pub mod mixed_sum;
pub mod polygonal;
pub mod reduction;
pub mod represent;
pub mod scalar;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use escalation::{
    catalogue_through, classify, escalate, full_catalogue, Candidate, Catalogue, ClassificationRun,
    EscalationNode, RunRecord, DEFAULT_BOUND, MAX_ARITY,
};
pub use forms::{Mat3, TernaryForm, Vec3};
pub use mixed_sum::{MixedSum, Term};
pub use polygonal::{polygonal_value, polygonal_values_up_to, Order};
pub use reduction::{reduction_check, reduction_plan, ReductionOutcome, ReductionPlan};
pub use represent::{
    criterion_failures, criterion_universal, exceptional_set, is_represented, truant, witness,
    RepresentedSet, TruantReport, Verdict, Witness, CRITICAL_INTEGERS, MIN_BOUND,
};
pub use scalar::Scalar;
pub use tables::{fixture, PaperFixture};
pub use verify::{verify_tables, RowCheck, VerifyOptions, VerifyReport};

/// Ternary form with `i64` entries.
pub type Form = TernaryForm<i64>;
/// 3×3 matrix with `i64` entries.
pub type Matrix = Mat3<i64>;
/// Integer 3-vector with `i64` entries.
pub type Vector = Vec3<i64>;
/// Congruence certificate over `i64`.
pub type Certificate = forms::CongruenceCertificate<i64>;
