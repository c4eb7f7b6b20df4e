//! Exact K-theoretic obstructions to compact Clifford–Klein forms.
//!
//! The crate decides, for a catalog of reductive homogeneous spaces `G/H`,
//! whether the reduced J-group image of the normal bundle of the maximal
//! compact subspace is forced to be nonzero, which rules out compact
//! quotients. Everything is exact integer arithmetic.
//!
//! Layout, bottom-up:
//!
//! * [`numtheory`]: valuations, primes and the exponent functions `nu`, `xi`.
//! * [`jorders`]: orders of J-images of tautological bundles and of spheres.
//! * [`kring`]: symbolic K-theory classes, Adams operations and the
//!   divisibility normal form.
//! * [`clifford`]: Clifford algebra classification and sphere K-groups.
//! * [`catalog`]: homogeneous-space families and their obstruction tests.
//! * [`obstruct`]: the decision engine, scans and admissibility tables.

pub mod catalog;
pub mod clifford;
mod error;
pub mod jorders;
pub mod kring;
pub mod numtheory;
pub mod obstruct;
pub(crate) mod serde_big;

pub use catalog::{FamilyId, ObstructionTest, SpaceSpec, TestKind};
pub use error::{Error, Result};
pub use jorders::{j_cp, j_hp, j_rp, j_sphere_group, s_sphere, CyclicGroup, JOrder};
pub use obstruct::{check, hpq_admissible_table, scan_exceptions, Outcome, TestResult, Verdict};
