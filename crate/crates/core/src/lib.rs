//! Exact computation of non-unique factorization invariants for ideal
//! extensions of free commutative monoids ℕ^d, backslash monoids built from
//! numerical semigroups, and monoids given by explicit atom lists.
//!
//! The main entry points:
//!
//! - [`monoid::IdealExtension`]: {0} ∪ (ℳ + ℕ^d) from its minimal
//!   generators, with gaps, atoms, extreme rays, core decomposition, and the
//!   gap-absorption and interval-closure checks.
//! - [`numsgp::NumericalSemigroup`] and [`backslash::BackslashMonoid`]:
//!   degree-graded monoids whose invariants transfer from the base
//!   numerical semigroup.
//! - [`factor::AtomBasis`]: factorization enumeration, length sets,
//!   distances, and R-classes over any finite atom list.
//! - [`invariants`]: Betti elements, catenary degree, delta sets, and
//!   omega-primality, each with exact and box-relative modes.
//! - [`harness`]: a seeded randomized battery separating theorem-backed
//!   self-tests from open-conjecture probes.
//!
//! All arithmetic is exact: 64-bit unsigned coordinates with hard failure on
//! overflow, and rationals for elasticity and length density.

pub mod backslash;
pub mod error;
pub mod ext;
pub mod factor;
pub mod harness;
pub mod invariants;
pub mod lattice;
pub mod monoid;
pub mod numsgp;
pub mod pi;
pub mod specfile;

pub use backslash::{BackslashMonoid, BsInvariantSummary};
pub use error::{Error, Result};
pub use ext::{rational_string, ExtNat, Rational, Reported};
pub use factor::{AtomBasis, AtomSetMonoid, Factorization};
pub use lattice::{minimals_of, Point, PointBox};
pub use monoid::{GapFiniteness, GapReport, IdealExtension, Monoid};
pub use numsgp::NumericalSemigroup;
pub use pi::PiProfile;
pub use specfile::{parse_monoid_spec, LoadedMonoid};
