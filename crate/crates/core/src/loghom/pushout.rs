//! Root adjunction, amalgamated sums, and saturated fiber-product charts.
//!
//! All three constructions present the result on the abstract coordinates of
//! a quotient group: generators and relations are assembled into an integer
//! matrix, the quotient is normalized through the Smith form, and the derived
//! monoid lives in the resulting group together with structure maps from the
//! inputs.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::intlin::{quotient_by_lattice, IntMatrix};
use crate::monoid::{AffineMonoid, FgAbelianGroup, GroupElement, MonoidError, SubgroupPresentation};

use super::hom::{smoothness_report, HomError, MonoidHom};

/// A monoid rewritten on the abstract coordinates of its Grothendieck group,
/// together with the presentation used for the rewrite.
fn abstract_monoid(m: &AffineMonoid) -> Result<(SubgroupPresentation, AffineMonoid), HomError> {
    let gp = m.gp()?;
    let abstract_group = gp.abstract_group().clone();
    let mut gens = Vec::with_capacity(m.generators().len());
    for g in m.generators() {
        let coords = gp
            .express(g)
            .ok_or(MonoidError::Internal("generator escaped its own group"))?;
        gens.push(abstract_group.element(coords)?);
    }
    let monoid = AffineMonoid::new(abstract_group, gens)?;
    Ok((gp, monoid))
}

/// Pad a relation matrix into a taller coordinate block starting at `offset`.
fn padded_columns(total: usize, offset: usize, relations: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..relations.cols())
        .map(|j| {
            let mut col = vec![BigInt::zero(); total];
            for i in 0..relations.rows() {
                col[offset + i] = relations[(i, j)].clone();
            }
            col
        })
        .collect()
}

/// The result of adjoining roots to an affine monoid.
///
/// `source` is the input monoid rewritten on the abstract coordinates of its
/// Grothendieck group, `extension` contains one new generator per requested
/// root, and `inclusion` identifies the source inside the extension.
#[derive(Clone, Debug)]
pub struct RootAdjunction {
    pub source: AffineMonoid,
    pub extension: AffineMonoid,
    pub inclusion: MonoidHom,
    /// The adjoined root of each requested element, in adjunction order.
    pub roots: Vec<GroupElement>,
}

/// Adjoin, for each pair `(x, n)`, a new generator `r` with `n·r = x`.
///
/// Each `x` must be a member of the monoid and each order `n` must be
/// positive.  The extension group is the quotient of `gp(M) ⊕ Zᵈ` by the
/// relations `n·r = x`; adjoining a root of an element that is already
/// divisible inside the group creates torsion rather than a larger rank.
pub fn adjoin_roots(
    m: &AffineMonoid,
    roots: &[(GroupElement, BigInt)],
) -> Result<RootAdjunction, HomError> {
    for (index, (x, order)) in roots.iter().enumerate() {
        if order.sign() != num_bigint::Sign::Plus {
            return Err(HomError::NonPositiveRootOrder { index });
        }
        if !m.member(x)? {
            return Err(HomError::RootOfNonElement { index });
        }
    }

    let (gp, source) = abstract_monoid(m)?;
    let n1 = gp.abstract_group().dim();
    let d = roots.len();
    let total = n1 + d;

    let mut columns = padded_columns(total, 0, &gp.abstract_group().relation_matrix());
    for (i, (x, order)) in roots.iter().enumerate() {
        let coords = gp
            .express(x)
            .ok_or(MonoidError::Internal("root target escaped the group"))?;
        let mut col = vec![BigInt::zero(); total];
        col[..n1].clone_from_slice(&coords);
        col[n1 + i] = -order.clone();
        columns.push(col);
    }

    let quot = quotient_by_lattice(total, &IntMatrix::from_columns(total, &columns));
    let ambient = FgAbelianGroup::new(quot.free_rank, quot.torsion.clone())?;

    let image = |j: usize| ambient.element(quot.projection.column(j));
    let mut gens = Vec::new();
    for g in source.generators() {
        let mut coords = g.coords().to_vec();
        coords.resize(total, BigInt::zero());
        gens.push(ambient.element(quot.project(&coords))?);
    }
    let mut adjoined = Vec::with_capacity(d);
    for i in 0..d {
        let r = image(n1 + i)?;
        gens.push(r.clone());
        adjoined.push(r);
    }
    let extension = AffineMonoid::new(ambient.clone(), gens)?;

    let inclusion_cols: Vec<Vec<BigInt>> = (0..n1).map(|j| quot.projection.column(j)).collect();
    let matrix = IntMatrix::from_columns(ambient.dim(), &inclusion_cols);
    let inclusion = MonoidHom::new(source.clone(), extension.clone(), matrix)?;

    Ok(RootAdjunction {
        source,
        extension,
        inclusion,
        roots: adjoined,
    })
}

/// An amalgamated sum of two monoid homomorphisms with a common source.
///
/// The legs have as sources the two target monoids rewritten on their
/// Grothendieck groups' abstract coordinates; [`Pushout::map_left`] and
/// [`Pushout::map_right`] accept elements in the original ambient groups.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub monoid: AffineMonoid,
    pub left: MonoidHom,
    pub right: MonoidHom,
    left_coords: SubgroupPresentation,
    right_coords: SubgroupPresentation,
}

impl Pushout {
    /// Image of an element of the left input's Grothendieck group.
    pub fn map_left(&self, el: &GroupElement) -> Result<GroupElement, HomError> {
        let coords = self.left_coords.express(el).ok_or(HomError::OutsideGroup)?;
        self.left
            .apply(&self.left_coords.abstract_group().element(coords)?)
    }

    /// Image of an element of the right input's Grothendieck group.
    pub fn map_right(&self, el: &GroupElement) -> Result<GroupElement, HomError> {
        let coords = self
            .right_coords
            .express(el)
            .ok_or(HomError::OutsideGroup)?;
        self.right
            .apply(&self.right_coords.abstract_group().element(coords)?)
    }
}

/// Glue two homomorphisms `left: Q → P₁` and `right: Q → P₂` along their
/// common source.
///
/// The underlying group is `(gp(P₁) ⊕ gp(P₂)) / ⟨(left(q), −right(q))⟩` and
/// the monoid is generated by the images of the generators of `P₁` and `P₂`.
pub fn amalgamated_sum(left: &MonoidHom, right: &MonoidHom) -> Result<Pushout, HomError> {
    if left.source() != right.source() {
        return Err(HomError::SourceMismatch);
    }
    let shared = left.source().gp()?;
    let (g1, p1) = abstract_monoid(left.target())?;
    let (g2, p2) = abstract_monoid(right.target())?;
    let n1 = g1.abstract_group().dim();
    let n2 = g2.abstract_group().dim();
    let total = n1 + n2;

    let mut columns = padded_columns(total, 0, &g1.abstract_group().relation_matrix());
    columns.extend(padded_columns(
        total,
        n1,
        &g2.abstract_group().relation_matrix(),
    ));
    for q in shared.generators() {
        let a = g1
            .express(&left.apply(q)?)
            .ok_or(MonoidError::Internal("left image escaped its group"))?;
        let b = g2
            .express(&right.apply(q)?)
            .ok_or(MonoidError::Internal("right image escaped its group"))?;
        let mut col = vec![BigInt::zero(); total];
        col[..n1].clone_from_slice(&a);
        for (i, v) in b.iter().enumerate() {
            col[n1 + i] = -v;
        }
        columns.push(col);
    }

    let quot = quotient_by_lattice(total, &IntMatrix::from_columns(total, &columns));
    let ambient = FgAbelianGroup::new(quot.free_rank, quot.torsion.clone())?;

    let mut gens = Vec::new();
    for g in p1.generators() {
        let mut coords = g.coords().to_vec();
        coords.resize(total, BigInt::zero());
        gens.push(ambient.element(quot.project(&coords))?);
    }
    for g in p2.generators() {
        let mut coords = vec![BigInt::zero(); total];
        coords[n1..].clone_from_slice(g.coords());
        gens.push(ambient.element(quot.project(&coords))?);
    }
    let monoid = AffineMonoid::new(ambient.clone(), gens)?;

    let left_cols: Vec<Vec<BigInt>> = (0..n1).map(|j| quot.projection.column(j)).collect();
    let right_cols: Vec<Vec<BigInt>> = (n1..total).map(|j| quot.projection.column(j)).collect();
    let left_leg = MonoidHom::new(
        p1,
        monoid.clone(),
        IntMatrix::from_columns(ambient.dim(), &left_cols),
    )?;
    let right_leg = MonoidHom::new(
        p2,
        monoid.clone(),
        IntMatrix::from_columns(ambient.dim(), &right_cols),
    )?;

    Ok(Pushout {
        monoid,
        left: left_leg,
        right: right_leg,
        left_coords: g1,
        right_coords: g2,
    })
}

/// The chart of a fiber product in the saturated world: the amalgamated sum
/// followed by saturation.
///
/// All three input monoids must already be saturated; the legs of the result
/// land in the saturated pushout.
pub fn fs_fiber_chart(left: &MonoidHom, right: &MonoidHom) -> Result<Pushout, HomError> {
    if !left.source().is_saturated()? {
        return Err(HomError::UnsaturatedInput { which: "shared" });
    }
    if !left.target().is_saturated()? {
        return Err(HomError::UnsaturatedInput { which: "left" });
    }
    if !right.target().is_saturated()? {
        return Err(HomError::UnsaturatedInput { which: "right" });
    }
    let pushout = amalgamated_sum(left, right)?;
    let saturated = pushout.monoid.saturate()?;
    let left_leg = MonoidHom::new(
        pushout.left.source().clone(),
        saturated.clone(),
        pushout.left.matrix().clone(),
    )?;
    let right_leg = MonoidHom::new(
        pushout.right.source().clone(),
        saturated.clone(),
        pushout.right.matrix().clone(),
    )?;
    Ok(Pushout {
        monoid: saturated,
        left: left_leg,
        right: right_leg,
        left_coords: pushout.left_coords,
        right_coords: pushout.right_coords,
    })
}

/// Verify that the rank of the amalgamated sum's group matches the expected
/// `rank P₁ + rank P₂ − rank Q`.
///
/// The identity is guaranteed when at least one leg has finite kernel on
/// Grothendieck groups, and that much is required up front; the return value
/// reports whether the computed pushout satisfies the identity.
pub fn rank_additivity_check(left: &MonoidHom, right: &MonoidHom) -> Result<bool, HomError> {
    let left_report = smoothness_report(left)?;
    let right_report = smoothness_report(right)?;
    if !left_report.kernel_is_finite() && !right_report.kernel_is_finite() {
        return Err(HomError::NotInjective);
    }
    let pushout = amalgamated_sum(left, right)?;
    let expected = left.target().gp()?.free_rank() + right.target().gp()?.free_rank();
    let actual = pushout.monoid.gp()?.free_rank() + left.source().gp()?.free_rank();
    Ok(expected == actual)
}
