//! Normal crossing coordinate rings and the semistability cocycle tests.
//!
//! The ring here is a polynomial ring in variables `z_0, …, z_n`, cut by the
//! single relation `z_0⋯z_d = 0` (the first `d + 1` variables are the branch
//! coordinates), with a chosen subset of the remaining variables inverted.
//! Coefficients are exact rationals or integers modulo a prime.  On such a
//! ring a *log system* is a tuple `ζ = (ζ_0, …, ζ_n)` whose branch entries
//! are units times branch variables (each branch carried exactly once) and
//! whose remaining entries are units.
//!
//! Two systems on one ring differ by a *transition*: a permutation `σ` and
//! units `u_i` with `ζ_i = u_i · ζ'_{σ(i)}` exactly.  A cover stores charts,
//! pairwise transitions, and optional triple-overlap data; the semistability
//! verdict asks every pairwise unit product to telescope to `1` and every
//! triple to compose coherently, with a relaxed pairwise mode that only
//! requires the product to be `1` modulo the ideal of the double locus.

mod cover;
mod ring;
mod system;

pub mod format;

pub use cover::{
    check_triple, cocycle_check, cocycle_check_seq, cocycle_defect, dss_verdict,
    triple_cocycle_check, unit_product, CocycleMode, NCCover, Overlap, OverlapVerdict,
    TripleOverlap, TripleVerdict,
};
pub use ring::{is_prime, FieldSpec, MonomialUnit, NCPoly, NCRing};
pub use system::{
    find_transition, verify_transition, LogSystem, Transition, ValidatedSystem,
};

use thiserror::Error;

/// Everything that can go wrong building rings, systems, and covers.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NCError {
    #[error("crossing depth {d} exceeds the variable index bound {n}")]
    DepthExceedsVars { n: usize, d: usize },
    #[error("variable {var} cannot be inverted: it is a branch coordinate or out of range")]
    InvertedBranch { var: usize },
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("denominator is divisible by the coefficient prime")]
    DenominatorNotInvertible,
    #[error("expected {expected} entries, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("negative exponent on non-inverted variable {var}")]
    NegativeExponent { var: usize },
    #[error("operands live in different rings")]
    MixedRings,
    #[error("entry {index} is neither a unit nor a unit times a branch variable as required")]
    InvalidSystemEntry { index: usize },
    #[error("entry {index} repeats a branch variable already carried by an earlier entry")]
    DuplicateCarrier { index: usize },
    #[error("entry {index} does not classify as a unit or a carried branch variable")]
    MalformedEntry { index: usize },
    #[error("the two systems carry different branch variable multisets")]
    CarrierMismatch,
    #[error("sigma is not a permutation of the entry indices")]
    NotAPermutation,
    #[error("transition entry {index} is not a unit")]
    UnitExpected { index: usize },
    #[error("transition relation fails at entry {index}")]
    RelationFails { index: usize },
    #[error("chart index {index} is out of range for this cover")]
    ChartIndexOutOfRange { index: usize },
    #[error("no overlap stored for chart pair {pair:?}")]
    MissingOverlap { pair: (usize, usize) },
    #[error("no triple stored for charts {charts:?}")]
    MissingTriple { charts: (usize, usize, usize) },
    #[error("overlap pair {pair:?} is stored in both orientations but they are not mutually inverse")]
    AsymmetricPair { pair: (usize, usize) },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse coefficient `{0}`")]
    BadCoefficient(String),
    #[error("variable renaming entry {index} is out of range or repeated")]
    BadRenaming { index: usize },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
