//! Lattice bases and quotient presentations derived from Smith normal form.
//!
//! A sublattice of Z^n is handled through a generating matrix whose columns
//! span it. Smith normal form U·A·V = S turns the column lattice into
//! ⟨d_i · u⁻¹_i⟩ for the first `rank` columns u⁻¹_i of U⁻¹, which gives a
//! deterministic basis; dropping the factors d_i gives the saturation
//! (the largest sublattice of the same rational span). Quotients Z^n / L are
//! read off the same data: the unimodular change of coordinates y = U·x turns
//! L into ⟨d_i e_i⟩, so the quotient is ⊕ Z/d_i ⊕ Z^{n-rank} with an explicit
//! projection matrix.

use super::matrix::IntMatrix;
use super::smith_nf::smith;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Deterministic basis of the column lattice of `a`, one column per basis
/// vector.
pub fn column_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith(a);
    IntMatrix::from_fn(a.rows(), snf.rank, |i, j| {
        &snf.u_inv[(i, j)] * &snf.invariant_factors[j]
    })
}

/// Basis of the saturation of the column lattice of `a`: the intersection of
/// its rational span with Z^rows.
pub fn lattice_saturation(a: &IntMatrix) -> IntMatrix {
    let snf = smith(a);
    snf.u_inv.submatrix_cols(0..snf.rank)
}

/// Z^n modulo the column lattice of `relations`, as explicit coordinates:
/// `free_rank` free coordinates first, then one coordinate mod `torsion[i]`
/// for each torsion factor, in divisibility order. `projection` maps old
/// coordinates to new ones; torsion rows are stored reduced into [0, m).
/// `section` maps new coordinates back to representatives in Z^n, so
/// `project ∘ section` is the identity on quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub projection: IntMatrix,
    pub section: IntMatrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Applies the projection and reduces torsion coordinates.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.projection.mul_vec(x);
        for (k, m) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            y[i] = y[i].mod_floor(m);
        }
        y
    }
}

pub fn quotient_by_lattice(n: usize, relations: &IntMatrix) -> Quotient {
    assert_eq!(relations.rows(), n, "relation matrix must have {n} rows");
    let snf = smith(relations);
    let torsion: Vec<BigInt> = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    let free_rank = n - snf.rank;
    let units = snf.rank - torsion.len();

    let dim = free_rank + torsion.len();
    let mut projection = IntMatrix::zeros(dim, n);
    let mut section = IntMatrix::zeros(n, dim);
    // Free coordinates: rows of U past the rank, sign-normalized so the first
    // nonzero entry is positive (a harmless automorphism of the free part).
    // The section takes the matching columns of U⁻¹, negated alongside.
    for (out, i) in (snf.rank..n).enumerate() {
        let mut row = snf.u.row(i);
        let mut col = snf.u_inv.column(i);
        if let Some(first) = row.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in &mut row {
                    *x = -&*x;
                }
                for x in &mut col {
                    *x = -&*x;
                }
            }
        }
        for (j, x) in row.into_iter().enumerate() {
            projection[(out, j)] = x;
        }
        for (j, x) in col.into_iter().enumerate() {
            section[(j, out)] = x;
        }
    }
    // Torsion coordinates: the rows of U whose invariant factor exceeds 1,
    // reduced mod that factor.
    for (k, m) in torsion.iter().enumerate() {
        let i = units + k;
        for j in 0..n {
            projection[(free_rank + k, j)] = snf.u[(i, j)].mod_floor(m);
            section[(j, free_rank + k)] = snf.u_inv[(j, i)].clone();
        }
    }
    Quotient {
        free_rank,
        torsion,
        projection,
        section,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_basis_of_2z_times_3z() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = column_lattice_basis(&a);
        assert_eq!(b.cols(), 2);
        // determinant of the basis must be ±6, the lattice index
        assert_eq!(b.det().abs(), BigInt::from(6));
    }

    #[test]
    fn saturation_of_a_scaled_line() {
        let a = IntMatrix::from_rows(&[vec![2], vec![4]]);
        let s = lattice_saturation(&a);
        assert_eq!(s.cols(), 1);
        // saturation of ⟨(2,4)⟩ is ⟨(1,2)⟩ up to sign
        assert_eq!(s[(1, 0)].clone(), BigInt::from(2) * &s[(0, 0)]);
        assert_eq!(s[(0, 0)].abs(), BigInt::one());
    }

    #[test]
    fn quotient_z2_by_2e1() {
        let rel = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let q = quotient_by_lattice(2, &rel);
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion, vec![BigInt::from(2)]);
        // e1 should become a torsion element of order 2, e2 a free generator
        let e1 = q.project(&[BigInt::one(), BigInt::zero()]);
        let e2 = q.project(&[BigInt::zero(), BigInt::one()]);
        assert_eq!(e1[1], BigInt::one());
        assert_eq!(e1[0], BigInt::zero());
        assert_eq!(e2[1], BigInt::zero());
        assert_eq!(e2[0].abs(), BigInt::one());
    }

    #[test]
    fn quotient_by_skew_relation() {
        // Z² / ⟨(2,-2)⟩ ≅ Z ⊕ Z/2
        let rel = IntMatrix::from_rows(&[vec![2], vec![-2]]);
        let q = quotient_by_lattice(2, &rel);
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion, vec![BigInt::from(2)]);
        // the relation itself must project to zero
        assert_eq!(
            q.project(&[BigInt::from(2), BigInt::from(-2)]),
            vec![BigInt::zero(), BigInt::zero()]
        );
    }

    #[test]
    fn projection_of_section_is_identity() {
        for rel in [
            IntMatrix::from_rows(&[vec![2, 0], vec![-2, 3], vec![0, 6]]),
            IntMatrix::from_rows(&[vec![4], vec![6], vec![0]]),
            IntMatrix::zeros(3, 0),
        ] {
            let q = quotient_by_lattice(3, &rel);
            for j in 0..q.dim() {
                let rep = q.section.column(j);
                let back = q.project(&rep);
                for (i, x) in back.iter().enumerate() {
                    let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(*x, expected, "coordinate {i} of basis vector {j}");
                }
            }
        }
    }

    #[test]
    fn quotient_with_no_relations_is_identity() {
        let q = quotient_by_lattice(2, &IntMatrix::zeros(2, 0));
        assert_eq!(q.free_rank, 2);
        assert!(q.torsion.is_empty());
        let x = [BigInt::from(5), BigInt::from(-7)];
        let y = q.project(&x);
        // projection is unimodular, so it is a permutation-free change of basis
        assert_eq!(q.projection.det().abs(), BigInt::one());
        assert_eq!(y.len(), 2);
    }
}
