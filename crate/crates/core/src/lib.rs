//! Well-rounded ideal lattices of real quadratic fields.
//!
//! The crate decides which primitive ideals of `Q(sqrt d)` give well-rounded
//! lattices, both by a closed-form rule on the ideal's normal form and by an
//! exact shortest-vector search, and cross-checks the two.
//!
//! All arithmetic is exact. Every algorithm is generic over [`Int`]; the
//! aliases below fix the scalar to `i128` (the CLI default) or [`BigInt`].

pub mod classify;
pub mod cli;
pub mod error;
pub mod ideal;
pub mod int;
pub mod lattice;
pub mod qform;

pub use num_bigint::BigInt;

pub use crate::classify::{
    enumerate_wr_ideals, scan_range, theorem_decision, verify_discriminant, ScanSummary,
    TheoremVerdict, DEFAULT_MARGIN,
};
pub use crate::error::{Error, Result};
pub use crate::ideal::{enumerate_primitive_ideals, is_fundamental_discriminant};
pub use crate::int::Int;
pub use crate::lattice::{is_well_rounded_oracle, minimal_vectors, wr_criterion_reduced_symmetric};
pub use crate::qform::identity_form;

pub type Form = qform::BinaryQuadraticForm<i128>;
pub type ReducedForm = qform::ReducedForm<i128>;
pub type Discriminant = ideal::FundamentalDiscriminant<i128>;
pub type Ideal = ideal::PrimitiveIdeal<i128>;
pub type GramForm = lattice::GramForm<i128>;
pub type Minima = lattice::MinimaResult<i128>;
pub type Report = classify::VerificationReport<i128>;

pub type BigForm = qform::BinaryQuadraticForm<BigInt>;
pub type BigDiscriminant = ideal::FundamentalDiscriminant<BigInt>;
pub type BigIdeal = ideal::PrimitiveIdeal<BigInt>;
