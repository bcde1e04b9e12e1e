//! Finite semifields built from twisted multiplications on extensions of
//! finite fields: construction, division tests, nuclei and centers,
//! isomorphism classification and automorphism groups, with brute-force
//! oracles cross-checking every closed-form count.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod algebra;
pub mod autgroup;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod family;
pub mod gf;
pub mod linalg;
pub mod oracle;
mod poly;
pub mod sandler;
pub mod verify;

pub use algebra::{AlgElement, AlgebraKind, Family, Fingerprint, SemifieldSpec, Side};
pub use autgroup::{Automorphism, GroupId, GroupLabel};
pub use classify::{ClassificationReport, IsoWitness};
pub use error::{Error, Result};
pub use family::FamilyParams;
pub use gf::{FieldElement, FieldTower};
pub use sandler::SandlerParams;
