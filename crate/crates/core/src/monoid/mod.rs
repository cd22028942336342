//! Finitely generated commutative monoids inside f.g. abelian groups.
//!
//! The ambient groups are Z^r ⊕ ⊕ Z/m_i with coordinates split free-first;
//! torsion coordinates are kept reduced into [0, m_i). An [`AffineMonoid`] is
//! a finite generator list in such a group. The operations here are the
//! monoid-level half of the smoothness story: membership, Grothendieck
//! groups, Hilbert bases, saturation, saturatedness inside a bigger monoid,
//! and the splitting of a saturated monoid into free and torsion parts.

mod cone;
pub mod format;
mod group;
mod hilbert;
mod ops;
mod ratlin;

pub use group::{FgAbelianGroup, GroupElement, GroupHom, SubgroupPresentation};
pub use hilbert::{hilbert_basis, hilbert_basis_seq};
pub use ops::{
    AffineMonoid, MonoidDecomposition, ProvedReason, SaturatedInVerdict, DEFAULT_MULTIPLIER_BOUND,
    DEFAULT_SEARCH_BOUND,
};

use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by the monoid operations.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("torsion orders must be at least 2, found {0}")]
    InvalidTorsionOrder(BigInt),
    #[error("element has {found} coordinates, the ambient group has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live in different ambient groups")]
    AmbientMismatch,
    #[error("homomorphism matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    HomShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("matrix does not respect the torsion order of source coordinate {col}")]
    TorsionIncompatible { col: usize },
    #[error("cone generator {index} has a nonzero torsion coordinate")]
    TorsionInConeGenerator { index: usize },
    #[error("cone is not pointed; lineality space of rank {}", lineality.len())]
    NonPointedCone { lineality: Vec<Vec<BigInt>> },
    #[error("monoid is not saturated: {witness} has a multiple in it but is missing")]
    NotSaturated { witness: GroupElement },
    #[error("generator {index} of the would-be submonoid fails membership")]
    NotSubmonoid { index: usize },
    #[error("internal geometry invariant violated: {0}")]
    Internal(&'static str),
}
