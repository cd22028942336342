//! Exact rational cone geometry on the free part of the ambient group.
//!
//! Cone membership is decided by Carathéodory's theorem: a vector lies in
//! cone(v_1, …, v_k) iff it lies in the simplicial cone of some linearly
//! independent subset, and any such subset extends to one of maximal size,
//! so only maximal linearly independent subsets need checking. Pointedness
//! and the strictly positive grading functional come from the dual side: the
//! polyhedron {w : w·v_i ≥ 1} restricted to the span of the generators is
//! line-free, so it is nonempty iff one of its vertices is feasible, and
//! vertices solve square subsystems. All of this is exact rational
//! arithmetic; generator counts and ranks are desk-scale.

use super::ratlin::{dot_int, kernel_rows, rank_rows, rat, solve_rows, Rat};
use crate::intlin::{lattice_saturation, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut head in combinations(last, k - 1) {
            head.push(last);
            out.push(head);
        }
    }
    out
}

/// Does `target` lie in the rational cone generated by `gens`? Exact; both
/// sides are integer vectors in the free coordinates.
pub(crate) fn cone_contains(gens: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    let nonzero: Vec<&Vec<BigInt>> = gens.iter().filter(|g| !g.iter().all(|x| x.is_zero())).collect();
    if nonzero.is_empty() {
        return false;
    }
    let dim = target.len();
    let rows_all: Vec<Vec<Rat>> = nonzero.iter().map(|g| g.iter().map(rat).collect()).collect();
    let rank = rank_rows(&rows_all);
    let target_rat: Vec<Rat> = target.iter().map(rat).collect();

    for subset in combinations(nonzero.len(), rank) {
        // columns of the subsystem are the chosen generators
        let a: Vec<Vec<Rat>> = (0..dim)
            .map(|coord| subset.iter().map(|&i| rows_all[i][coord].clone()).collect())
            .collect();
        let sub_rows: Vec<Vec<Rat>> = subset.iter().map(|&i| rows_all[i].clone()).collect();
        if rank_rows(&sub_rows) < rank {
            continue;
        }
        if let Some(coeffs) = solve_rows(&a, &target_rat) {
            if coeffs.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// A strictly positive grading functional: rational w with w·g ≥ 1 for every
/// nonzero generator. Exists iff the cone is pointed (no nonzero g with both
/// g and -g in the cone). Returns None for non-pointed input.
pub(crate) fn positive_functional(gens: &[Vec<BigInt>]) -> Option<Vec<Rat>> {
    let dim = gens.first().map(|g| g.len()).unwrap_or(0);
    let nonzero: Vec<&Vec<BigInt>> = gens.iter().filter(|g| !g.iter().all(|x| x.is_zero())).collect();
    if nonzero.is_empty() {
        return Some(vec![Rat::zero(); dim]);
    }
    let rows: Vec<Vec<Rat>> = nonzero.iter().map(|g| g.iter().map(rat).collect()).collect();
    let rank = rank_rows(&rows);
    // Directions orthogonal to every generator are pinned to zero so the
    // feasible region is line-free within the span.
    let orth = kernel_rows(&rows, dim);

    for subset in combinations(nonzero.len(), rank) {
        let mut system: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let mut rhs: Vec<Rat> = vec![Rat::one(); rank];
        for k in &orth {
            system.push(k.clone());
            rhs.push(Rat::zero());
        }
        if rank_rows(&system) < dim {
            continue;
        }
        if let Some(w) = solve_rows(&system, &rhs) {
            if nonzero
                .iter()
                .all(|g| dot_int(&w, g) >= Rat::one())
            {
                return Some(w);
            }
        }
    }
    None
}

/// Generators lying in the lineality space C ∩ -C, reported as a saturated
/// lattice basis of their span. Empty for pointed cones.
pub(crate) fn lineality_basis(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let dim = gens.first().map(|g| g.len()).unwrap_or(0);
    let in_lineality: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| !g.iter().all(|x| x.is_zero()))
        .filter(|g| {
            let neg: Vec<BigInt> = g.iter().map(|x| -x).collect();
            cone_contains(gens, &neg)
        })
        .cloned()
        .collect();
    if in_lineality.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_columns(dim, &in_lineality);
    let basis = lattice_saturation(&m);
    (0..basis.cols()).map(|j| basis.column(j)).collect()
}

/// Divides out the gcd of the coordinates, mapping a nonzero vector to the
/// primitive vector on its ray.
pub(crate) fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}
