//! Small exact rational linear algebra: Gaussian elimination over
//! `BigRational` for the cone geometry. Systems here are tiny (dimension is
//! the ambient free rank), so no pivot-size cleverness is needed beyond
//! exactness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Rat = BigRational;

pub(crate) fn rat(x: &BigInt) -> Rat {
    BigRational::from_integer(x.clone())
}

pub(crate) fn dot_int(a: &[Rat], b: &[BigInt]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * rat(y)).sum()
}

/// Solves A·x = b for the row-major matrix `a`. Returns one solution with
/// free variables set to zero, or None when inconsistent. Rows may be
/// redundant; columns may outnumber rows.
pub(crate) fn solve_rows(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len());
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let t = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: zero rows must have zero rhs
    for row in m.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank of the row-major matrix.
pub(crate) fn rank_rows(a: &[Vec<Rat>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let t = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Basis of {x : row·x = 0 for every row}.
pub(crate) fn kernel_rows(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}
