//! Exact computation in the transformation semigroup
//! `T(X,Y,Z) = {α ∈ T(X) : Yα ⊆ Z}` for finite `Z ⊆ Y ⊆ X`: membership,
//! regular elements and idempotents, the starred Green's relations, and
//! closed-form counts checked against brute force.
//!
//! Universes are canonical: `X = {0..n}`, `Y = {0..m}`, `Z = {0..k}`.
//! Maps act on the right, so `a.compose(&b)` applies `a` first.

pub mod cli;
pub mod counting;
pub mod error;
pub mod relations;
pub mod semigroup;
pub mod sets;
pub mod structure;
pub mod transformation;
pub mod universe;
pub mod verify;

pub use counting::Count;
pub use error::{Error, Result};
pub use relations::{AbundanceVerdict, Method, RelationClasses, RelationKind};
pub use semigroup::{ElementStream, Filter};
pub use sets::{ImageSet, KernelPartition};
pub use structure::RegularityWitness;
pub use transformation::Transformation;
pub use universe::{CaseTag, Universe};
pub use verify::{Suite, VerificationReport, Verifier};
