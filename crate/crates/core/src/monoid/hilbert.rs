//! Hilbert bases of pointed rational cones.
//!
//! The basis of the semigroup Z^r ∩ cone(g_1, …, g_k) is assembled from a
//! simplicial cover: every maximal linearly independent subset B of the
//! extreme rays spans a simplicial subcone, and Z^r ∩ cone(B) is generated
//! by B together with the lattice points of the half-open parallelepiped
//! {Σ t_i b_i : 0 ≤ t_i < 1}. Those lattice points are enumerated without
//! any box scan: the Smith form of the ray matrix exhibits the finite group
//! (span_Q B ∩ Z^r)/⟨B⟩, each residue class is realized once, and reducing
//! the representative modulo ⟨B⟩ lands it in the parallelepiped. The union
//! over all blocks generates the semigroup; discarding every generator that
//! is a sum of the others leaves the unique minimal generating set.
//!
//! The residue enumeration and the final minimization fan out across rayon
//! when the `parallel` feature is on; [`hilbert_basis_seq`] pins the
//! sequential path for benchmarking.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cone::{combinations, cone_contains, lineality_basis, positive_functional, primitive};
use super::group::{FgAbelianGroup, GroupElement};
use super::ratlin::{dot_int, rank_rows, rat, solve_rows, Rat};
use super::MonoidError;
use crate::intlin::{smith, IntMatrix};
use crate::par;

/// Minimal generating set of Z^r ∩ cone(free parts of `gens`), where r is
/// the free rank of `ambient`. Generators must have zero torsion
/// coordinates and span a pointed cone. The result is canonically sorted
/// (total degree, then lexicographic) and unique.
pub fn hilbert_basis(
    ambient: &FgAbelianGroup,
    gens: &[GroupElement],
) -> Result<Vec<GroupElement>, MonoidError> {
    hilbert_in(ambient, gens, true)
}

/// Sequential twin of [`hilbert_basis`]: identical output, no rayon.
pub fn hilbert_basis_seq(
    ambient: &FgAbelianGroup,
    gens: &[GroupElement],
) -> Result<Vec<GroupElement>, MonoidError> {
    hilbert_in(ambient, gens, false)
}

fn hilbert_in(
    ambient: &FgAbelianGroup,
    gens: &[GroupElement],
    use_parallel: bool,
) -> Result<Vec<GroupElement>, MonoidError> {
    let r = ambient.free_rank();
    let mut free = Vec::with_capacity(gens.len());
    for (index, g) in gens.iter().enumerate() {
        if g.coords().len() != ambient.dim() {
            return Err(MonoidError::DimensionMismatch {
                expected: ambient.dim(),
                found: g.coords().len(),
            });
        }
        if g.coords()[r..].iter().any(|c| !c.is_zero()) {
            return Err(MonoidError::TorsionInConeGenerator { index });
        }
        free.push(g.coords()[..r].to_vec());
    }
    let basis = hilbert_core(r, &free, use_parallel)?;
    let mut out = Vec::with_capacity(basis.len());
    for mut v in basis {
        v.extend(std::iter::repeat_with(BigInt::zero).take(ambient.dim() - r));
        out.push(ambient.element(v)?);
    }
    Ok(out)
}

/// Core computation on raw free vectors; output sorted by total degree then
/// lexicographically.
pub(crate) fn hilbert_core(
    dim: usize,
    gens: &[Vec<BigInt>],
    use_parallel: bool,
) -> Result<Vec<Vec<BigInt>>, MonoidError> {
    let mut prim: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| !g.iter().all(Zero::is_zero))
        .map(|g| primitive(g))
        .collect();
    prim.sort();
    prim.dedup();
    if prim.is_empty() {
        return Ok(Vec::new());
    }
    let w = positive_functional(&prim).ok_or_else(|| MonoidError::NonPointedCone {
        lineality: lineality_basis(&prim),
    })?;

    // Extreme rays: a ray survives iff it is outside the cone of the others.
    // For a pointed cone the survivors alone span the same cone.
    let keep = run_map(use_parallel, prim.len(), |i| {
        let others: Vec<Vec<BigInt>> = prim
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        !cone_contains(&others, &prim[i])
    });
    let extreme: Vec<Vec<BigInt>> = prim
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(g, _)| g.clone())
        .collect();

    let rows: Vec<Vec<Rat>> = extreme
        .iter()
        .map(|g| g.iter().map(rat).collect())
        .collect();
    let rank = rank_rows(&rows);

    let mut candidates: BTreeSet<Vec<BigInt>> = extreme.iter().cloned().collect();
    for subset in combinations(extreme.len(), rank) {
        let sub_rows: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
        if rank_rows(&sub_rows) < rank {
            continue;
        }
        let rays: Vec<Vec<BigInt>> = subset.iter().map(|&i| extreme[i].clone()).collect();
        for p in parallelepiped_points(dim, &rays, use_parallel)? {
            if !p.iter().all(Zero::is_zero) {
                candidates.insert(p);
            }
        }
    }

    // Minimization: a candidate stays iff the remaining candidates cannot
    // already express it. Reducible candidates are sums of strictly smaller
    // (in the grading) irreducible ones, so per-candidate tests are
    // order-independent and safe to run in parallel.
    let cand: Vec<Vec<BigInt>> = candidates.into_iter().collect();
    let irreducible = run_map(use_parallel, cand.len(), |i| {
        let others: Vec<Vec<BigInt>> = cand
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        !pointed_member(&others, &w, &cand[i])
    });
    let mut basis: Vec<Vec<BigInt>> = cand
        .into_iter()
        .zip(&irreducible)
        .filter(|(_, k)| **k)
        .map(|(g, _)| g)
        .collect();
    basis.sort_by(|a, b| {
        let da: BigInt = a.iter().sum();
        let db: BigInt = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    Ok(basis)
}

fn run_map<T, F>(use_parallel: bool, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if use_parallel {
        par::map_indexed(n, f)
    } else {
        par::map_indexed_seq(n, f)
    }
}

/// Lattice points of the half-open parallelepiped spanned by linearly
/// independent `rays`, via Smith-form residues: exactly ∏ dᵢ points, one per
/// class of (span_Q ∩ Z^dim)/⟨rays⟩.
fn parallelepiped_points(
    dim: usize,
    rays: &[Vec<BigInt>],
    use_parallel: bool,
) -> Result<Vec<Vec<BigInt>>, MonoidError> {
    let q = rays.len();
    let matrix = IntMatrix::from_columns(dim, rays);
    let sf = smith(&matrix);
    if sf.rank != q {
        return Err(MonoidError::Internal("dependent rays in simplicial block"));
    }
    let mut radices = Vec::with_capacity(q);
    let mut total: usize = 1;
    for d in &sf.invariant_factors {
        let du = d
            .to_usize()
            .ok_or(MonoidError::Internal("parallelepiped index overflow"))?;
        total = total
            .checked_mul(du)
            .ok_or(MonoidError::Internal("parallelepiped index overflow"))?;
        radices.push(du);
    }
    let sat_cols: Vec<Vec<BigInt>> = (0..q).map(|i| sf.u_inv.column(i)).collect();
    let ray_rows: Vec<Vec<Rat>> = (0..dim)
        .map(|i| (0..q).map(|j| rat(&matrix[(i, j)])).collect())
        .collect();

    let points = run_map(use_parallel, total, |flat| -> Option<Vec<BigInt>> {
        let mut rem = flat;
        let mut y = vec![BigInt::zero(); dim];
        for (col, &radix) in sat_cols.iter().zip(&radices) {
            let c = rem % radix;
            rem /= radix;
            if c != 0 {
                let c = BigInt::from(c);
                for (t, u) in y.iter_mut().zip(col) {
                    *t += &c * u;
                }
            }
        }
        // Reduce the class representative into the fundamental domain.
        let y_rat: Vec<Rat> = y.iter().map(rat).collect();
        let coeffs = solve_rows(&ray_rows, &y_rat)?;
        for (j, t) in coeffs.iter().enumerate() {
            let shift = t.floor().to_integer();
            if !shift.is_zero() {
                for (i, out) in y.iter_mut().enumerate() {
                    *out -= &shift * &matrix[(i, j)];
                }
            }
        }
        Some(y)
    });
    points
        .into_iter()
        .map(|p| p.ok_or(MonoidError::Internal("residue outside ray span")))
        .collect()
}

/// Does `target` lie in the monoid generated by `gens`, all living in a
/// pointed cone on which the functional `w` is strictly positive? Complete
/// depth-first search over multiplicity vectors; the grading bounds every
/// branch, so the search always terminates.
pub(crate) fn pointed_member(gens: &[Vec<BigInt>], w: &[Rat], target: &[BigInt]) -> bool {
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let weights: Vec<Rat> = gens.iter().map(|g| dot_int(w, g)).collect();
    if weights.iter().any(|x| !x.is_positive()) {
        return false;
    }
    fn rec(gens: &[Vec<BigInt>], weights: &[Rat], w: &[Rat], res: &[BigInt], start: usize) -> bool {
        if res.iter().all(Zero::is_zero) {
            return true;
        }
        if start == gens.len() {
            return false;
        }
        let wres = dot_int(w, res);
        if wres.is_negative() || wres.is_zero() {
            return false;
        }
        let mut current = res.to_vec();
        loop {
            if rec(gens, weights, w, &current, start + 1) {
                return true;
            }
            if dot_int(w, &current) < weights[start] {
                return false;
            }
            for (t, g) in current.iter_mut().zip(&gens[start]) {
                *t -= g;
            }
        }
    }
    rec(gens, &weights, w, target, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn basis_of(dim: usize, gens: &[&[i64]]) -> Vec<Vec<BigInt>> {
        let raw: Vec<Vec<BigInt>> = gens.iter().map(|g| v(g)).collect();
        hilbert_core(dim, &raw, true).expect("pointed")
    }

    #[test]
    fn fills_in_the_interior_ray() {
        let hb = basis_of(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(hb, vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
    }

    #[test]
    fn symmetric_cone_needs_the_diagonal() {
        let hb = basis_of(2, &[&[2, 1], &[1, 2]]);
        assert_eq!(hb, vec![v(&[1, 1]), v(&[1, 2]), v(&[2, 1])]);
    }

    #[test]
    fn multiples_collapse_to_the_primitive_ray() {
        let hb = basis_of(1, &[&[2]]);
        assert_eq!(hb, vec![v(&[1])]);
        let hb = basis_of(2, &[&[2, 0], &[1, 0], &[3, 0]]);
        assert_eq!(hb, vec![v(&[1, 0])]);
    }

    #[test]
    fn simplicial_three_dimensional_cone() {
        let hb = basis_of(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        assert_eq!(
            hb,
            vec![v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[1, 1, 1]), v(&[1, 1, 2])]
        );
    }

    #[test]
    fn no_element_is_a_sum_of_two_others() {
        let hb = basis_of(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 3]]);
        for a in &hb {
            for b in &hb {
                let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                assert!(!hb.contains(&s), "{a:?} + {b:?} is in the basis");
            }
        }
    }

    #[test]
    fn rejects_non_pointed_input() {
        let err = hilbert_core(1, &[v(&[1]), v(&[-1])], true).unwrap_err();
        match err {
            MonoidError::NonPointedCone { lineality } => {
                assert_eq!(lineality.len(), 1);
                assert_eq!(lineality[0][0].abs(), BigInt::one());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_torsion_coordinates() {
        let g = FgAbelianGroup::new(1, vec![BigInt::from(2)]).unwrap();
        let gens = vec![g.element_from_i64(&[1, 1]).unwrap()];
        assert_eq!(
            hilbert_basis(&g, &gens).unwrap_err(),
            MonoidError::TorsionInConeGenerator { index: 0 }
        );
    }

    #[test]
    fn ambient_elements_round_trip() {
        let g = FgAbelianGroup::free(2);
        let gens = vec![
            g.element_from_i64(&[1, 0]).unwrap(),
            g.element_from_i64(&[1, 2]).unwrap(),
        ];
        let hb = hilbert_basis(&g, &gens).unwrap();
        let coords: Vec<Vec<BigInt>> = hb.iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(coords, vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
    }

    #[test]
    fn sequential_twin_agrees() {
        let g = FgAbelianGroup::free(3);
        let gens = vec![
            g.element_from_i64(&[1, 0, 0]).unwrap(),
            g.element_from_i64(&[1, 3, 0]).unwrap(),
            g.element_from_i64(&[1, 0, 2]).unwrap(),
            g.element_from_i64(&[1, 3, 2]).unwrap(),
        ];
        assert_eq!(
            hilbert_basis(&g, &gens).unwrap(),
            hilbert_basis_seq(&g, &gens).unwrap()
        );
    }

    #[test]
    fn membership_search_is_exact() {
        let gens = vec![v(&[2, 1]), v(&[1, 2])];
        let w = positive_functional(&gens).unwrap();
        assert!(pointed_member(&gens, &w, &v(&[3, 3])));
        assert!(pointed_member(&gens, &w, &v(&[0, 0])));
        assert!(!pointed_member(&gens, &w, &v(&[1, 1])));
        assert!(!pointed_member(&gens, &w, &v(&[2, 0])));
    }

    proptest! {
        // Any finite set of first-quadrant generators spans a pointed cone;
        // its Hilbert basis must express every generator back and must sit
        // inside the cone.
        #[test]
        fn basis_generates_and_stays_inside(
            raw in proptest::collection::vec((0i64..5, 0i64..5), 1..5)
        ) {
            let gens: Vec<Vec<BigInt>> =
                raw.iter().map(|&(a, b)| v(&[a, b])).collect();
            let hb = hilbert_core(2, &gens, false).unwrap();
            let one = vec![Rat::one(), Rat::one()];
            for el in &hb {
                prop_assert!(cone_contains(&gens, el));
            }
            for g in &gens {
                prop_assert!(pointed_member(&hb, &one, g));
            }
        }
    }
}
