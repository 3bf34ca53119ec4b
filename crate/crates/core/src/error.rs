//! Crate-wide error type.

use crate::lattice::Point;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generator set is empty")]
    EmptyGeneratorSet,

    #[error("generator set contains the zero vector")]
    ZeroGenerator,

    #[error("invalid box: lower corner must be componentwise <= upper corner")]
    InvalidBox,

    #[error("complement is not closed under addition: {a} + {b} = {} is a gap", a + b)]
    ComplementNotClosed { a: u64, b: u64 },

    #[error("generators must have gcd 1 (got gcd {gcd})")]
    GcdNotOne { gcd: u64 },

    #[error("element is not a member of the monoid")]
    NotMember,

    #[error("element has no factorization over the given atoms")]
    NoFactorization,

    #[error("length density is undefined (fewer than two lengths)")]
    LdUndefined,

    #[error("the monoid has infinitely many gaps")]
    InfiniteGaps,

    #[error("the monoid has infinitely many atoms; restrict to a box")]
    InfinitelyManyAtoms,

    #[error("exact check needs finitely many gaps; pass a box for a box-relative check")]
    NeedsBoundedMode,

    #[error("operation is only defined in dimension {expected} (monoid has dimension {got})")]
    WrongDimension { expected: usize, got: usize },

    #[error("gap absorption has not been verified for this monoid; use the box-relative scan")]
    NotVerifiedGapAbsorbing,

    #[error("no unit vector is minimal in this monoid, so the core decomposition is trivial")]
    EmptyL,

    #[error("element is not an atom")]
    NotAtom,

    #[error("factorizations form a single R-class")]
    SingleRClass,

    #[error("search capped at length {cap}; omega is at least {lower_bound}")]
    CapExceeded { cap: u64, lower_bound: u64 },

    #[error("closed-form invariants are proven only for ordinary numerical semigroups")]
    FormulaOutOfScope,

    #[error("weighted membership functionals are not supported; use an indicator subset J")]
    UnsupportedWeights,

    #[error("the atom witness {0} is outside the computed profile range")]
    ProfileRangeExceeded(Point),

    #[error("factorizations refer to different atom bases")]
    BasisMismatch,

    #[error("spec file: {0}")]
    SpecFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
