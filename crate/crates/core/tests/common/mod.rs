//! Independent oracles shared by the integration tests. Nothing here calls
//! into the elimination code of the library.
#![allow(dead_code)]

use descent::chain::ChainComplex;
use descent::exactla::{Matrix, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

/// Textbook Gaussian elimination on a copy of the entries.
pub fn rank(m: &Matrix) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let t = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &a[r][j] * &t;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim C_n - rank d_n - rank d_{n+1}` in every degree.
pub fn betti(c: &ChainComplex) -> Vec<usize> {
    let r = |n: usize| {
        if n == 0 || n >= c.len() {
            0
        } else {
            rank(&c.d(n))
        }
    };
    let mut v: Vec<usize> = (0..c.len()).map(|n| c.dim(n) - r(n) - r(n + 1)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn trimmed(dims: &[usize]) -> Vec<usize> {
    let end = dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
    dims[..end].to_vec()
}

/// Small integer matrices, entries in `-3..=3`.
pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |e| Matrix::from_i64(r, c, &e))
    })
}

pub fn matrix_of(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |e| Matrix::from_i64(rows, cols, &e))
}
