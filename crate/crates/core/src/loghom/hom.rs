//! Homomorphisms of affine monoids and their smoothness invariants.
//!
//! A [`MonoidHom`] is an integer matrix between the ambient groups of two
//! affine monoids that carries every generator of the source into the target
//! monoid.  Its geometric quality is read off the induced map on Grothendieck
//! groups: the homomorphism is smooth over a base field exactly when that map
//! has finite kernel and the orders of the kernel and of the torsion part of
//! the cokernel are invertible in the field, and it is étale when in addition
//! the cokernel is finite.  [`smoothness_report`] computes those invariants
//! exactly; the verdict for a given characteristic is then a divisibility
//! check.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::intlin::{kernel_basis, quotient_by_lattice, IntMatrix};
use crate::monoid::{
    AffineMonoid, GroupElement, GroupHom, MonoidError, SubgroupPresentation,
};

/// Errors raised while building or combining monoid homomorphisms.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("generator {index} of the source does not map into the target monoid")]
    ImageOutsideTarget { index: usize },
    #[error("the two legs of an amalgamated sum must share the same source monoid")]
    SourceMismatch,
    #[error("element {index} is not a member of the monoid, so no root can be adjoined")]
    RootOfNonElement { index: usize },
    #[error("root order {index} must be a positive integer")]
    NonPositiveRootOrder { index: usize },
    #[error("the {which} input must be saturated before taking a saturated fiber chart")]
    UnsaturatedInput { which: &'static str },
    #[error("the element lies outside the Grothendieck group of the relevant monoid")]
    OutsideGroup,
    #[error("rank additivity is only guaranteed when a leg is injective on groups")]
    NotInjective,
}

/// A homomorphism of affine monoids.
///
/// The map is stored as a [`GroupHom`] on the ambient groups; construction
/// verifies that the matrix is compatible with the torsion orders on both
/// sides and that the image of every source generator is a member of the
/// target monoid, so the restriction to the monoids is well defined.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    source: AffineMonoid,
    target: AffineMonoid,
    map: GroupHom,
}

impl MonoidHom {
    pub fn new(
        source: AffineMonoid,
        target: AffineMonoid,
        matrix: IntMatrix,
    ) -> Result<MonoidHom, HomError> {
        let map = GroupHom::new(source.ambient().clone(), target.ambient().clone(), matrix)?;
        for (index, g) in source.generators().iter().enumerate() {
            let image = map.apply(g)?;
            if !target.member(&image)? {
                return Err(HomError::ImageOutsideTarget { index });
            }
        }
        Ok(MonoidHom {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &AffineMonoid {
        &self.source
    }

    pub fn target(&self) -> &AffineMonoid {
        &self.target
    }

    /// The underlying map of ambient groups.
    pub fn group_hom(&self) -> &GroupHom {
        &self.map
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.map.matrix()
    }

    pub fn apply(&self, el: &GroupElement) -> Result<GroupElement, HomError> {
        Ok(self.map.apply(el)?)
    }
}

/// Invariant factors of the kernel and cokernel of the map induced on
/// Grothendieck groups.
///
/// The cokernel invariants are exactly the invariants of the module of
/// relative log differentials attached to the homomorphism: its free rank is
/// the rank of the locally free part and the torsion orders list the finite
/// cyclic summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub kernel_free_rank: usize,
    pub kernel_torsion: Vec<BigInt>,
    pub cokernel_free_rank: usize,
    pub cokernel_torsion: Vec<BigInt>,
}

impl SmoothnessReport {
    pub fn kernel_is_finite(&self) -> bool {
        self.kernel_free_rank == 0
    }

    /// Order of the kernel, when finite.
    pub fn kernel_order(&self) -> Option<BigInt> {
        if !self.kernel_is_finite() {
            return None;
        }
        Some(self.kernel_torsion.iter().product())
    }

    /// Product of the kernel order and the torsion orders of the cokernel.
    ///
    /// This is the single integer whose invertibility in the base field
    /// decides smoothness; `None` means the kernel is infinite and no
    /// characteristic can repair the map.
    pub fn torsion_obstruction(&self) -> Option<BigInt> {
        let kernel = self.kernel_order()?;
        let coker: BigInt = self.cokernel_torsion.iter().product();
        Some(kernel * coker)
    }

    /// Whether the homomorphism is smooth over a field of the given
    /// characteristic (`0` for characteristic zero).
    pub fn is_log_smooth(&self, characteristic: u64) -> bool {
        match self.torsion_obstruction() {
            None => false,
            Some(order) => {
                if characteristic == 0 || order.is_one() {
                    true
                } else {
                    !(order % BigInt::from(characteristic)).is_zero()
                }
            }
        }
    }

    /// Smooth with finite cokernel: the map is étale over the field.
    pub fn is_log_etale(&self, characteristic: u64) -> bool {
        self.is_log_smooth(characteristic) && self.cokernel_free_rank == 0
    }

    /// Invariants of the module of relative log differentials: free rank and
    /// torsion orders of the cokernel on Grothendieck groups.
    pub fn differential_invariants(&self) -> (usize, &[BigInt]) {
        (self.cokernel_free_rank, &self.cokernel_torsion)
    }
}

/// Express the map induced on Grothendieck groups in the abstract coordinates
/// of the two group presentations.
fn abstract_matrix(
    hom: &MonoidHom,
    source_gp: &SubgroupPresentation,
    target_gp: &SubgroupPresentation,
) -> Result<IntMatrix, HomError> {
    let n1 = source_gp.abstract_group().dim();
    let n2 = target_gp.abstract_group().dim();
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(n1);
    for g in source_gp.generators() {
        let image = hom.group_hom().apply(g)?;
        let coords = target_gp
            .express(&image)
            .ok_or(MonoidError::Internal("image escaped the target group"))?;
        columns.push(coords);
    }
    Ok(IntMatrix::from_columns(n2, &columns))
}

/// Kernel and cokernel invariants of the map induced on Grothendieck groups.
pub fn smoothness_report(hom: &MonoidHom) -> Result<SmoothnessReport, HomError> {
    let source_gp = hom.source().gp()?;
    let target_gp = hom.target().gp()?;
    let a1 = source_gp.abstract_group();
    let a2 = target_gp.abstract_group();
    let mf = abstract_matrix(hom, &source_gp, &target_gp)?;

    // Cokernel: the abstract target modulo its own torsion relations and the
    // columns of the induced matrix.
    let coker = quotient_by_lattice(a2.dim(), &mf.hstack(&a2.relation_matrix()));

    // Kernel: integral solutions of  mf·x ≡ 0  modulo the target relations,
    // projected to the source coordinates and read as a subgroup of the
    // abstract source group.
    let solutions = kernel_basis(&mf.hstack(&a2.relation_matrix()));
    let mut kernel_gens: Vec<GroupElement> = Vec::with_capacity(solutions.cols());
    for j in 0..solutions.cols() {
        let coords: Vec<BigInt> = (0..a1.dim()).map(|i| solutions[(i, j)].clone()).collect();
        kernel_gens.push(a1.element(coords)?);
    }
    let kernel = SubgroupPresentation::new(a1, &kernel_gens)?;

    Ok(SmoothnessReport {
        kernel_free_rank: kernel.free_rank(),
        kernel_torsion: kernel.torsion_orders().to_vec(),
        cokernel_free_rank: coker.free_rank,
        cokernel_torsion: coker.torsion,
    })
}

/// Convenience wrapper: is the homomorphism smooth over a field of the given
/// characteristic?
pub fn is_log_smooth(hom: &MonoidHom, characteristic: u64) -> Result<bool, HomError> {
    Ok(smoothness_report(hom)?.is_log_smooth(characteristic))
}

/// Convenience wrapper: is the homomorphism étale over a field of the given
/// characteristic?
pub fn is_log_etale(hom: &MonoidHom, characteristic: u64) -> Result<bool, HomError> {
    Ok(smoothness_report(hom)?.is_log_etale(characteristic))
}

/// Build a homomorphism between monoids in free ambient groups from integer
/// rows, a convenience for tests and examples.
pub fn hom_from_i64(
    source: &AffineMonoid,
    target: &AffineMonoid,
    rows: &[&[i64]],
) -> Result<MonoidHom, HomError> {
    let matrix = IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    MonoidHom::new(source.clone(), target.clone(), matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FgAbelianGroup;

    fn numerical(gens: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::from_i64(&FgAbelianGroup::free(1), gens).unwrap()
    }

    #[test]
    fn rejects_a_map_that_leaves_the_target_monoid() {
        let source = numerical(&[&[1]]);
        let target = numerical(&[&[2]]);
        let err = hom_from_i64(&source, &target, &[&[1]]).unwrap_err();
        assert_eq!(err, HomError::ImageOutsideTarget { index: 0 });
    }

    #[test]
    fn rejects_a_matrix_of_the_wrong_shape() {
        let source = numerical(&[&[1]]);
        let target = numerical(&[&[1]]);
        let err = hom_from_i64(&source, &target, &[&[1, 0]]).unwrap_err();
        assert!(matches!(err, HomError::Monoid(MonoidError::HomShape { .. })));
    }

    #[test]
    fn identity_is_etale_in_every_characteristic() {
        let m = numerical(&[&[1]]);
        let hom = hom_from_i64(&m, &m, &[&[1]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.kernel_free_rank, 0);
        assert!(report.kernel_torsion.is_empty());
        assert_eq!(report.cokernel_free_rank, 0);
        assert!(report.cokernel_torsion.is_empty());
        for p in [0, 2, 3, 5] {
            assert!(report.is_log_etale(p));
        }
    }

    #[test]
    fn multiplication_by_two_is_etale_away_from_two() {
        let m = numerical(&[&[1]]);
        let hom = hom_from_i64(&m, &m, &[&[2]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.kernel_free_rank, 0);
        assert!(report.kernel_torsion.is_empty());
        assert_eq!(report.cokernel_free_rank, 0);
        assert_eq!(report.cokernel_torsion, vec![BigInt::from(2)]);
        assert!(report.is_log_smooth(0));
        assert!(report.is_log_etale(0));
        assert!(!report.is_log_smooth(2));
        assert!(report.is_log_etale(3));
        assert_eq!(report.torsion_obstruction(), Some(BigInt::from(2)));
    }

    #[test]
    fn scaling_by_six_fails_exactly_at_two_and_three() {
        let m = numerical(&[&[1]]);
        let hom = hom_from_i64(&m, &m, &[&[6]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.cokernel_torsion, vec![BigInt::from(6)]);
        assert!(report.is_log_smooth(0));
        assert!(!report.is_log_smooth(2));
        assert!(!report.is_log_smooth(3));
        assert!(report.is_log_smooth(5));
        assert!(report.is_log_smooth(7));
    }

    #[test]
    fn diagonal_embedding_is_smooth_but_not_etale() {
        let line = numerical(&[&[1]]);
        let ambient = FgAbelianGroup::free(3);
        let octant = AffineMonoid::from_i64(&ambient, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
            .unwrap();
        let hom = hom_from_i64(&line, &octant, &[&[1], &[1], &[1]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.kernel_free_rank, 0);
        assert!(report.kernel_torsion.is_empty());
        assert_eq!(report.cokernel_free_rank, 2);
        assert!(report.cokernel_torsion.is_empty());
        for p in [0, 2, 3] {
            assert!(report.is_log_smooth(p));
            assert!(!report.is_log_etale(p));
        }
        assert_eq!(report.differential_invariants(), (2, &[][..]));
    }

    #[test]
    fn a_projection_with_infinite_kernel_is_never_smooth() {
        let plane = FgAbelianGroup::free(2);
        let quadrant = AffineMonoid::from_i64(&plane, &[&[1, 0], &[0, 1]]).unwrap();
        let line = numerical(&[&[1]]);
        let hom = hom_from_i64(&quadrant, &line, &[&[1, 1]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.kernel_free_rank, 1);
        assert_eq!(report.torsion_obstruction(), None);
        for p in [0, 2, 5] {
            assert!(!report.is_log_smooth(p));
        }
    }

    #[test]
    fn killing_a_torsion_summand_is_etale_away_from_its_order() {
        let ambient = FgAbelianGroup::new(1, vec![BigInt::from(2)]).unwrap();
        let source = AffineMonoid::from_i64(&ambient, &[&[1, 0], &[0, 1]]).unwrap();
        let target = numerical(&[&[1]]);
        let hom = hom_from_i64(&source, &target, &[&[1, 0]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.kernel_free_rank, 0);
        assert_eq!(report.kernel_torsion, vec![BigInt::from(2)]);
        assert_eq!(report.cokernel_free_rank, 0);
        assert!(report.cokernel_torsion.is_empty());
        assert!(report.is_log_etale(0));
        assert!(!report.is_log_smooth(2));
        assert!(report.is_log_etale(5));
        assert_eq!(report.kernel_order(), Some(BigInt::from(2)));
    }

    #[test]
    fn the_obstruction_multiplies_kernel_and_cokernel_orders() {
        let ambient = FgAbelianGroup::new(1, vec![BigInt::from(2)]).unwrap();
        let source = AffineMonoid::from_i64(&ambient, &[&[1, 0], &[0, 1]]).unwrap();
        let target = numerical(&[&[1]]);
        let hom = hom_from_i64(&source, &target, &[&[3, 0]]).unwrap();
        let report = smoothness_report(&hom).unwrap();
        assert_eq!(report.kernel_torsion, vec![BigInt::from(2)]);
        assert_eq!(report.cokernel_torsion, vec![BigInt::from(3)]);
        assert_eq!(report.torsion_obstruction(), Some(BigInt::from(6)));
        assert!(!report.is_log_smooth(2));
        assert!(!report.is_log_smooth(3));
        assert!(report.is_log_etale(5));
    }

    #[test]
    fn composite_reports_compose_consistently_on_scalings() {
        let m = numerical(&[&[1]]);
        let double = hom_from_i64(&m, &m, &[&[2]]).unwrap();
        let triple = hom_from_i64(&m, &m, &[&[3]]).unwrap();
        let composed = MonoidHom::new(
            m.clone(),
            m.clone(),
            triple.group_hom().compose(double.group_hom()).unwrap().matrix().clone(),
        )
        .unwrap();
        let report = smoothness_report(&composed).unwrap();
        assert_eq!(report.cokernel_torsion, vec![BigInt::from(6)]);
    }
}
