//! Exact computational kernel for log-smoothness checks on toric-style charts.
//!
//! The crate is organized in four layers, each usable on its own:
//!
//! * [`intlin`] — integer linear algebra over arbitrary-precision integers:
//!   Smith normal form with transformation matrices, kernels, cokernels,
//!   lattice solving.
//! * [`monoid`] — finitely generated commutative monoids embedded in
//!   `Z^r ⊕ ⊕ Z/m_i`: membership, Grothendieck group, Hilbert bases,
//!   saturation, torsion splitting.
//! * [`loghom`] — monoid homomorphisms as charts: the smoothness criterion on
//!   kernel/cokernel data, differential invariants, root adjunction, pushouts,
//!   fs fiber product charts.
//! * [`nclog`] — normal-crossing coordinate rings with exact coefficients:
//!   log systems, transitions between charts, pairwise and triple cocycle
//!   conditions, and the d-semistability verdict.
//!
//! Everything is exact: integers are `num_bigint::BigInt`, rationals are
//! `num_rational::BigRational`, and finite prime fields are reduced `u64`.
//! No floating point is used anywhere.
//!
//! With the default `parallel` feature the enumeration-heavy inner loops run
//! on rayon; results are sorted into canonical order afterwards, so output is
//! identical to the sequential fallback.

pub mod intlin;
pub mod loghom;
pub mod monoid;
pub mod nclog;
pub(crate) mod par;

pub use intlin::{cokernel, kernel_basis, smith, Cokernel, IntMatrix, SmithForm};
pub use monoid::{AffineMonoid, FgAbelianGroup, GroupElement, GroupHom};
