//! Smith normal form and the maps derived from it.
//!
//! `smith` returns U, S, V with U·A·V = S, U and V unimodular, and S diagonal
//! with positive entries d_1 | d_2 | … followed by zeros. The pivot strategy
//! picks a nonzero entry of minimal absolute value in the trailing block,
//! which keeps intermediate entries small in practice; the divisibility
//! condition is restored by folding offending rows into the pivot row until
//! the chain stabilizes. The inverse of U is tracked alongside U by applying
//! the inverse column operations, so callers get lattice bases for free.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, maintained during elimination.
    pub u_inv: IntMatrix,
    /// The positive diagonal entries d_1 | d_2 | … of S.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith(a: &IntMatrix) -> SmithForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'pivot: loop {
            // Clear the pivot column with Euclidean row steps. A nonzero
            // remainder is strictly smaller than the pivot; promoting it to
            // the pivot position and restarting makes the pivot shrink, so
            // the loop terminates.
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let q = &s[(i, t)] / &s[(t, t)];
                    let neg_q = -q;
                    s.add_row_multiple(i, t, &neg_q);
                    u.add_row_multiple(i, t, &neg_q);
                    u_inv.add_col_multiple(t, i, &-neg_q);
                    if !s[(i, t)].is_zero() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        u_inv.swap_cols(t, i);
                        continue 'pivot;
                    }
                }
            }
            // Same for the pivot row, with column steps.
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let q = &s[(t, j)] / &s[(t, t)];
                    let neg_q = -q;
                    s.add_col_multiple(j, t, &neg_q);
                    v.add_col_multiple(j, t, &neg_q);
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                        continue 'pivot;
                    }
                }
            }
            // The pivot must divide every entry of the trailing block for the
            // invariant factor chain to come out right.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        s.add_row_multiple(t, i, &BigInt::from(1));
                        u.add_row_multiple(t, i, &BigInt::from(1));
                        u_inv.add_col_multiple(i, t, &BigInt::from(-1));
                        continue 'pivot;
                    }
                }
            }
            break;
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    let rank = t;
    let invariant_factors: Vec<BigInt> = (0..rank).map(|i| s[(i, i)].clone()).collect();
    debug_assert_eq!(u.mul(a).mul(&v), s);
    debug_assert_eq!(u.mul(&u_inv), IntMatrix::identity(rows));
    SmithForm {
        u,
        s,
        v,
        u_inv,
        invariant_factors,
        rank,
    }
}

fn min_abs_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            let a = s[(i, j)].abs();
            match &best {
                Some((_, _, b)) if *b <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis of the integer kernel {v : A·v = 0}, returned as the columns of a
/// matrix with `a.cols()` rows. The matrix has zero columns when the kernel
/// is trivial.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith(a);
    snf.v.submatrix_cols(snf.rank..a.cols())
}

/// Cokernel of A as a map into Z^rows: Z^rows / (column lattice of A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let snf = smith(a);
    Cokernel {
        free_rank: a.rows() - snf.rank,
        torsion: snf
            .invariant_factors
            .into_iter()
            .filter(|d| !d.is_one())
            .collect(),
    }
}

/// One integer solution x of A·x = b, or None when b is outside the column
/// lattice of A. Free coordinates of the solution space are set to zero.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < snf.rank {
            let d = &snf.s[(i, i)];
            let (q, r) = ub[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}
