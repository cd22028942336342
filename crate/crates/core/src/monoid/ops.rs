//! Operations on finitely generated monoids inside ambient groups.
//!
//! Membership is decided exactly and totally: generators whose free part has
//! an inverse inside the rational cone generate a subgroup (their monoid is
//! already a group), so folding that subgroup into the ambient group leaves
//! a monoid whose cone is pointed, where a graded depth-first search
//! terminates. Saturation is computed relative to the Grothendieck group:
//! the saturation of M is {x ∈ gp(M) : free(x) ∈ cone(M)}, assembled from
//! the torsion subgroup of gp(M) and a Hilbert basis in a lattice basis of
//! the free shadow. Saturatedness of P inside a container monoid M comes in
//! three flavors: proved (via a certificate independent of the search
//! bounds), refuted (with a witness and its multiplier), or verified only
//! within a box, which is reported honestly as such.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cone::{cone_contains, positive_functional};
use super::group::{FgAbelianGroup, GroupElement, SubgroupPresentation};
use super::hilbert::hilbert_core;
use super::ratlin::{dot_int, kernel_rows, rat, Rat};
use super::MonoidError;
use crate::intlin::{column_lattice_basis, quotient_by_lattice, solve, IntMatrix};
use crate::par;

/// Half-width of the coordinate box scanned for saturatedness witnesses.
pub const DEFAULT_SEARCH_BOUND: u32 = 32;

/// Largest multiplier n tried when testing whether some n·x lands in the
/// submonoid.
pub const DEFAULT_MULTIPLIER_BOUND: u32 = 12;

/// A finitely generated monoid given by generators inside an ambient group.
/// The generator list is kept canonical: zeros dropped, torsion reduced,
/// sorted by graded-lexicographic order, duplicates removed. Two values
/// compare equal iff their canonical generator lists agree; mathematical
/// equality of the generated monoids is [`AffineMonoid::equals_monoid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient: FgAbelianGroup,
    generators: Vec<GroupElement>,
}

/// Splitting of a saturated monoid P into a free part and the full torsion
/// subgroup of gp(P); P is generated by the two parts together and they meet
/// only in zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDecomposition {
    pub free_part: AffineMonoid,
    pub torsion_part: AffineMonoid,
}

/// Why a saturatedness claim holds independently of any search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProvedReason {
    /// The container lies inside the submonoid, so they generate the same
    /// monoid and there is nothing strictly between them.
    ContainerCoincides,
    /// The divisible hull of the submonoid — everything in the ambient group
    /// with a multiple inside it — is already contained in it, so no
    /// container can exhibit a missing root.
    DivisibleHullInside,
}

/// Outcome of the bounded saturatedness check of P inside M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturatedInVerdict {
    /// Saturated, with a certificate valid for every search bound.
    ProvedTrue { reason: ProvedReason },
    /// No witness inside the searched box; larger witnesses are not ruled
    /// out.
    TrueWithinBound {
        search_bound: u32,
        multiplier_bound: u32,
    },
    /// `multiplier · witness` lies in P, the witness lies in M but not in P.
    False {
        witness: GroupElement,
        multiplier: BigInt,
    },
}

impl AffineMonoid {
    pub fn new(
        ambient: FgAbelianGroup,
        generators: Vec<GroupElement>,
    ) -> Result<AffineMonoid, MonoidError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let g = ambient.element(g.into_coords())?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        gens.sort_by(|a, b| ambient.canonical_cmp(a, b));
        gens.dedup();
        Ok(AffineMonoid {
            ambient,
            generators: gens,
        })
    }

    pub fn from_i64(ambient: &FgAbelianGroup, rows: &[&[i64]]) -> Result<AffineMonoid, MonoidError> {
        let gens = rows
            .iter()
            .map(|row| ambient.element_from_i64(row))
            .collect::<Result<Vec<_>, _>>()?;
        AffineMonoid::new(ambient.clone(), gens)
    }

    pub fn trivial(ambient: FgAbelianGroup) -> AffineMonoid {
        AffineMonoid {
            ambient,
            generators: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    fn nonzero_free_parts(&self) -> Vec<Vec<BigInt>> {
        self.generators
            .iter()
            .map(|g| self.ambient.free_part(g).to_vec())
            .filter(|f| !f.iter().all(Zero::is_zero))
            .collect()
    }

    /// Exact membership; total for every input, including monoids with
    /// invertible elements.
    pub fn member(&self, el: &GroupElement) -> Result<bool, MonoidError> {
        let el = self.ambient.element(el.coords().to_vec())?;
        member_core(&self.ambient, &self.generators, &el)
    }

    /// The Grothendieck group gp(M) as a subgroup of the ambient group.
    pub fn gp(&self) -> Result<SubgroupPresentation, MonoidError> {
        SubgroupPresentation::new(&self.ambient, &self.generators)
    }

    /// The saturation {x ∈ gp(M) : n·x ∈ M for some n ≥ 1}, with a minimal
    /// generating set.
    pub fn saturate(&self) -> Result<AffineMonoid, MonoidError> {
        let group = self.gp()?;
        let gens = relative_saturation(&self.ambient, &self.nonzero_free_parts(), &group)?;
        AffineMonoid::new(self.ambient.clone(), gens)?.minimized()
    }

    /// Everything in the ambient group with a positive multiple inside M:
    /// the saturation taken relative to the divisible hull of gp(M) rather
    /// than gp(M) itself.
    pub fn divisible_hull(&self) -> Result<AffineMonoid, MonoidError> {
        let n = self.ambient.dim();
        let cols: Vec<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|g| g.coords().to_vec())
            .collect();
        let lattice = IntMatrix::from_columns(n, &cols).hstack(&self.ambient.relation_matrix());
        let quot = quotient_by_lattice(n, &lattice);
        let mut hull_gens = self.generators.clone();
        for k in 0..quot.torsion.len() {
            let lift = quot.section.column(quot.free_rank + k);
            hull_gens.push(self.ambient.element(lift)?);
        }
        let hull = SubgroupPresentation::new(&self.ambient, &hull_gens)?;
        let gens = relative_saturation(&self.ambient, &self.nonzero_free_parts(), &hull)?;
        AffineMonoid::new(self.ambient.clone(), gens)?.minimized()
    }

    /// Is M equal to its saturation inside gp(M)?
    pub fn is_saturated(&self) -> Result<bool, MonoidError> {
        Ok(self.saturation_witness()?.is_none())
    }

    /// An element of the saturation that is missing from M, if any.
    pub fn saturation_witness(&self) -> Result<Option<GroupElement>, MonoidError> {
        let sat = self.saturate()?;
        for g in sat.generators() {
            if !self.member(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// Is every element of `container` with a multiple in `self` already in
    /// `self`? Tries two bound-independent certificates, then scans the box
    /// `[-search_bound, search_bound]^free × torsion` for counterexamples.
    pub fn is_saturated_in(
        &self,
        container: &AffineMonoid,
        search_bound: u32,
        multiplier_bound: u32,
    ) -> Result<SaturatedInVerdict, MonoidError> {
        if self.ambient != container.ambient {
            return Err(MonoidError::AmbientMismatch);
        }
        for (index, g) in self.generators.iter().enumerate() {
            if !container.member(g)? {
                return Err(MonoidError::NotSubmonoid { index });
            }
        }
        let mut container_inside = true;
        for g in container.generators() {
            if !self.member(g)? {
                container_inside = false;
                break;
            }
        }
        if container_inside {
            return Ok(SaturatedInVerdict::ProvedTrue {
                reason: ProvedReason::ContainerCoincides,
            });
        }
        let hull = self.divisible_hull()?;
        let mut hull_inside = true;
        for g in hull.generators() {
            if !self.member(g)? {
                hull_inside = false;
                break;
            }
        }
        if hull_inside {
            return Ok(SaturatedInVerdict::ProvedTrue {
                reason: ProvedReason::DivisibleHullInside,
            });
        }
        match self.witness_search(container, search_bound, multiplier_bound)? {
            Some((witness, multiplier)) => Ok(SaturatedInVerdict::False {
                witness,
                multiplier,
            }),
            None => Ok(SaturatedInVerdict::TrueWithinBound {
                search_bound,
                multiplier_bound,
            }),
        }
    }

    fn witness_search(
        &self,
        container: &AffineMonoid,
        search_bound: u32,
        multiplier_bound: u32,
    ) -> Result<Option<(GroupElement, BigInt)>, MonoidError> {
        let r = self.ambient.free_rank();
        let side = 2 * search_bound as usize + 1;
        let mut radices = vec![side; r];
        for m in self.ambient.torsion_orders() {
            radices.push(
                m.to_usize()
                    .ok_or(MonoidError::Internal("torsion order exceeds the search index"))?,
            );
        }
        let mut total: usize = 1;
        for radix in &radices {
            total = total
                .checked_mul(*radix)
                .ok_or(MonoidError::Internal("witness search space too large"))?;
        }
        let free = self.nonzero_free_parts();
        let span_rows: Vec<Vec<Rat>> = free
            .iter()
            .map(|f| f.iter().map(rat).collect())
            .collect();
        // free(x) lies in span_Q of the free shadow iff it is orthogonal to
        // the complement; a necessary condition for x to have a multiple in
        // the monoid.
        let orthogonal = kernel_rows(&span_rows, r);

        let probe = |flat: usize| -> Option<Result<(GroupElement, BigInt), MonoidError>> {
            let mut rem = flat;
            let mut coords = Vec::with_capacity(self.ambient.dim());
            for (k, radix) in radices.iter().enumerate() {
                let digit = rem % radix;
                rem /= radix;
                if k < r {
                    coords.push(BigInt::from(center_out(digit)));
                } else {
                    coords.push(BigInt::from(digit));
                }
            }
            let x = match self.ambient.element(coords) {
                Ok(x) => x,
                Err(e) => return Some(Err(e)),
            };
            if x.is_zero() {
                return None;
            }
            let fx = self.ambient.free_part(&x);
            if orthogonal.iter().any(|k| !dot_int(k, fx).is_zero()) {
                return None;
            }
            if !cone_contains(&free, fx) {
                return None;
            }
            // smallest multiplier landing in self; 1 means x itself is in
            let mut multiplier: Option<BigInt> = None;
            for n in 1..=multiplier_bound {
                let nx = self.ambient.scale(&BigInt::from(n), &x);
                match member_core(&self.ambient, &self.generators, &nx) {
                    Err(e) => return Some(Err(e)),
                    Ok(true) => {
                        multiplier = Some(BigInt::from(n));
                        break;
                    }
                    Ok(false) => {}
                }
            }
            let n = multiplier?;
            if n == BigInt::from(1) {
                return None;
            }
            match member_core(&container.ambient, &container.generators, &x) {
                Err(e) => Some(Err(e)),
                Ok(true) => Some(Ok((x, n))),
                Ok(false) => None,
            }
        };
        match par::find_first_indexed(total, probe) {
            Some(Ok(hit)) => Ok(Some(hit)),
            Some(Err(e)) => Err(e),
            None => Ok(None),
        }
    }

    /// Splits a saturated monoid as (free part) ⊕ (torsion subgroup of its
    /// Grothendieck group). Fails with the missing element when the monoid
    /// is not saturated.
    pub fn split_torsion(&self) -> Result<MonoidDecomposition, MonoidError> {
        if let Some(witness) = self.saturation_witness()? {
            return Err(MonoidError::NotSaturated { witness });
        }
        let group = self.gp()?;
        let torsion_elements = group.torsion_elements();
        let s = group.free_rank();
        // Free complement of the torsion subgroup inside gp(M): the abstract
        // free basis realized in the ambient group, each representative
        // shifted by the torsion element that makes it canonically least.
        let mut basis = Vec::with_capacity(s);
        for i in 0..s {
            let b = group.generators()[i].clone();
            let best = torsion_elements
                .iter()
                .map(|t| self.ambient.add(&b, t))
                .min_by(|x, y| self.ambient.canonical_cmp(x, y))
                .unwrap_or(b);
            basis.push(best);
        }
        let mut free_gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let coords = group
                .express(g)
                .ok_or(MonoidError::Internal("generator escaped its own group"))?;
            let mut acc = self.ambient.zero();
            for (b, c) in basis.iter().zip(&coords) {
                acc = self.ambient.add(&acc, &self.ambient.scale(c, b));
            }
            free_gens.push(acc);
        }
        let free_part = AffineMonoid::new(self.ambient.clone(), free_gens)?.minimized()?;
        let torsion_part =
            AffineMonoid::new(self.ambient.clone(), torsion_elements)?.minimized()?;
        Ok(MonoidDecomposition {
            free_part,
            torsion_part,
        })
    }

    /// Does `self` contain every element of `other` (same ambient group)?
    pub fn contains_monoid(&self, other: &AffineMonoid) -> Result<bool, MonoidError> {
        if self.ambient != other.ambient {
            return Err(MonoidError::AmbientMismatch);
        }
        for g in &other.generators {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mathematical equality of the generated monoids.
    pub fn equals_monoid(&self, other: &AffineMonoid) -> Result<bool, MonoidError> {
        Ok(self.contains_monoid(other)? && other.contains_monoid(self)?)
    }

    /// Greedily removes generators expressible by the remaining ones until
    /// none is, preferring to drop canonically larger generators.
    pub fn minimized(&self) -> Result<AffineMonoid, MonoidError> {
        let mut gens = self.generators.clone();
        'outer: loop {
            for i in (0..gens.len()).rev() {
                let rest: Vec<GroupElement> = gens
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                if member_core(&self.ambient, &rest, &gens[i])? {
                    gens.remove(i);
                    continue 'outer;
                }
            }
            break;
        }
        AffineMonoid::new(self.ambient.clone(), gens)
    }
}

/// 0, 1, -1, 2, -2, … — the box scan visits small coordinates first so the
/// first witness found is a small one.
fn center_out(digit: usize) -> i64 {
    if digit == 0 {
        0
    } else if digit % 2 == 1 {
        ((digit + 1) / 2) as i64
    } else {
        -((digit / 2) as i64)
    }
}

fn member_core(
    ambient: &FgAbelianGroup,
    gens: &[GroupElement],
    target: &GroupElement,
) -> Result<bool, MonoidError> {
    if target.is_zero() {
        return Ok(true);
    }
    if gens.is_empty() {
        return Ok(false);
    }
    let free: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| ambient.free_part(g).to_vec())
        .collect();
    let invertible: Vec<usize> = (0..gens.len())
        .filter(|&i| {
            let neg: Vec<BigInt> = free[i].iter().map(|x| -x).collect();
            cone_contains(&free, &neg)
        })
        .collect();
    if invertible.is_empty() {
        // Pointed cone: a grading positive on all generators bounds every
        // multiplicity, so the search below is finite and complete.
        let w = positive_functional(&free)
            .ok_or(MonoidError::Internal("pointed cone without a positive grading"))?;
        let weights: Vec<Rat> = free.iter().map(|f| dot_int(&w, f)).collect();
        let nonneg: Vec<usize> = (0..free[0].len())
            .filter(|&c| free.iter().all(|f| !f[c].is_negative()))
            .collect();
        let mut failed = HashSet::new();
        return Ok(graded_dfs(
            ambient, gens, &w, &weights, &nonneg, target, 0, &mut failed,
        ));
    }
    // Generators with -free(g) in the cone form a subgroup of the monoid:
    // fold it into the ambient group and recurse on the quotient, whose cone
    // is pointed.
    let n = ambient.dim();
    let cols: Vec<Vec<BigInt>> = invertible
        .iter()
        .map(|&i| gens[i].coords().to_vec())
        .collect();
    let lattice = IntMatrix::from_columns(n, &cols).hstack(&ambient.relation_matrix());
    let quot = quotient_by_lattice(n, &lattice);
    let image = FgAbelianGroup::new(quot.free_rank, quot.torsion.clone())?;
    let mut image_gens = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if invertible.contains(&i) {
            continue;
        }
        let e = image.element(quot.project(g.coords()))?;
        if !e.is_zero() {
            image_gens.push(e);
        }
    }
    let image_target = image.element(quot.project(target.coords()))?;
    member_core(&image, &image_gens, &image_target)
}

#[allow(clippy::too_many_arguments)]
fn graded_dfs(
    ambient: &FgAbelianGroup,
    gens: &[GroupElement],
    w: &[Rat],
    weights: &[Rat],
    nonneg: &[usize],
    res: &GroupElement,
    start: usize,
    failed: &mut HashSet<(Vec<BigInt>, usize)>,
) -> bool {
    if res.is_zero() {
        return true;
    }
    let free_res = ambient.free_part(res);
    let wres = dot_int(w, free_res);
    if !wres.is_positive() {
        // Every generator has positive weight, so only the empty sum can
        // produce a residual of weight ≤ 0, and this residual is nonzero.
        return false;
    }
    // On a coordinate where every generator is nonnegative, a residual that
    // has gone negative can never return to zero.
    if start == gens.len() || nonneg.iter().any(|&c| free_res[c].is_negative()) {
        return false;
    }
    let key = (res.coords().to_vec(), start);
    if failed.contains(&key) {
        return false;
    }
    // Largest multiplicity of gens[start] compatible with the weight bound
    // and with staying nonnegative on the one-signed coordinates.
    let g_free = ambient.free_part(&gens[start]);
    let mut k_max = (wres / &weights[start]).floor().to_integer();
    for &c in nonneg {
        if g_free[c].is_positive() {
            let bound = &free_res[c] / &g_free[c];
            if bound < k_max {
                k_max = bound;
            }
        }
    }
    // Walk multiplicities from k_max down to zero: greedy-first ordering
    // settles positive instances without touring the failure subtrees first.
    let scaled: Vec<BigInt> = res
        .coords()
        .iter()
        .zip(gens[start].coords())
        .map(|(r, g)| r - &k_max * g)
        .collect();
    let mut current = ambient
        .element(scaled)
        .expect("residual has ambient dimension");
    let mut k = k_max;
    loop {
        if graded_dfs(
            ambient,
            gens,
            w,
            weights,
            nonneg,
            &current,
            start + 1,
            failed,
        ) {
            return true;
        }
        if k.is_zero() {
            break;
        }
        k -= 1;
        current = ambient.add(&current, &gens[start]);
    }
    failed.insert(key);
    false
}

/// Generators of {x ∈ H : free(x) ∈ cone(cone_free)} for a subgroup H of
/// the ambient group containing all the cone generators. The free shadows
/// form a sublattice of Z^r; the Hilbert basis is computed in a basis of
/// that sublattice (splitting off the lineality space first), then each
/// free vector is lifted back to H with the canonically least torsion part.
fn relative_saturation(
    ambient: &FgAbelianGroup,
    cone_free: &[Vec<BigInt>],
    subgroup: &SubgroupPresentation,
) -> Result<Vec<GroupElement>, MonoidError> {
    let r = ambient.free_rank();
    let torsion_elements = subgroup.torsion_elements();

    let shadow_cols: Vec<Vec<BigInt>> = subgroup
        .generators()
        .iter()
        .map(|g| ambient.free_part(g).to_vec())
        .collect();
    let shadow = IntMatrix::from_columns(r, &shadow_cols);
    let basis = column_lattice_basis(&shadow);
    let q = basis.cols();

    let mut u_gens = Vec::with_capacity(cone_free.len());
    for f in cone_free {
        let u = solve(&basis, f)
            .ok_or(MonoidError::Internal("cone generator outside the free shadow lattice"))?;
        u_gens.push(u);
    }

    let lineality = super::cone::lineality_basis(&u_gens);
    let mut u_monoid: Vec<Vec<BigInt>> = Vec::new();
    if lineality.is_empty() {
        u_monoid = hilbert_core(q, &u_gens, true)?;
    } else {
        let lin = IntMatrix::from_columns(q, &lineality);
        let quot = quotient_by_lattice(q, &lin);
        if !quot.torsion.is_empty() {
            return Err(MonoidError::Internal("saturated lineality lattice has torsion"));
        }
        let images: Vec<Vec<BigInt>> = u_gens.iter().map(|u| quot.project(u)).collect();
        for h in hilbert_core(quot.free_rank, &images, true)? {
            u_monoid.push(quot.section.mul_vec(&h));
        }
        for v in lineality {
            u_monoid.push(v.iter().map(|x| -x).collect());
            u_monoid.push(v);
        }
    }

    let mut gens = Vec::new();
    for u in u_monoid {
        let target_free = basis.mul_vec(&u);
        gens.push(lift_least_torsion(
            ambient,
            subgroup,
            &shadow,
            &torsion_elements,
            &target_free,
        )?);
    }
    for t in torsion_elements {
        if !t.is_zero() {
            gens.push(t);
        }
    }
    Ok(gens)
}

/// The canonically least element of H whose free part is `target_free`.
/// All such elements form one coset of the torsion subgroup of H.
fn lift_least_torsion(
    ambient: &FgAbelianGroup,
    subgroup: &SubgroupPresentation,
    shadow: &IntMatrix,
    torsion_elements: &[GroupElement],
    target_free: &[BigInt],
) -> Result<GroupElement, MonoidError> {
    let coeffs = solve(shadow, target_free)
        .ok_or(MonoidError::Internal("lift target outside the free shadow lattice"))?;
    let mut lift = ambient.zero();
    for (g, c) in subgroup.generators().iter().zip(&coeffs) {
        lift = ambient.add(&lift, &ambient.scale(c, g));
    }
    Ok(torsion_elements
        .iter()
        .map(|t| ambient.add(&lift, t))
        .min_by(|x, y| ambient.canonical_cmp(x, y))
        .unwrap_or(lift))
}
