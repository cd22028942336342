//! Homomorphisms of affine monoids: smoothness and étaleness verdicts,
//! differential invariants, root adjunction, amalgamated sums, and saturated
//! fiber-product charts.
//!
//! The quality of a homomorphism is decided entirely on Grothendieck groups.
//! [`smoothness_report`] computes the invariant factors of the kernel and
//! cokernel of the induced group map; [`SmoothnessReport::is_log_smooth`]
//! then answers for any field characteristic by checking that the kernel is
//! finite and that its order, together with the torsion orders of the
//! cokernel, is invertible.  The constructions in [`pushout`] build new
//! charts from old ones — adjoining roots of monoid elements, gluing two
//! maps along a common source, and saturating the result — keeping exact
//! integer coordinates throughout.

mod hom;
mod pushout;

pub mod format;

pub use hom::{
    hom_from_i64, is_log_etale, is_log_smooth, smoothness_report, HomError, MonoidHom,
    SmoothnessReport,
};
pub use pushout::{
    adjoin_roots, amalgamated_sum, fs_fiber_chart, rank_additivity_check, Pushout, RootAdjunction,
};
