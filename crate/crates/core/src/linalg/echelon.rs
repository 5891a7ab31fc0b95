use super::{Matrix, Subspace};
use crate::scalar::Scalar;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination. The result is the unique reduced row-echelon
/// form of `m`.
pub fn rref<F: Scalar>(m: &Matrix<F>) -> Rref<F> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<F>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = F::one() / a[r][c].clone();
        for v in a[r][c..].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *v = v.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: Matrix::from_rows(cols, a),
        pivots,
        rank,
    }
}

pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    rref(m).rank
}

/// Canonical basis of `{v : m v = 0}`.
pub fn kernel_basis<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    let cols = m.cols();
    let Rref {
        reduced, pivots, ..
    } = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<F>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(i, f).clone();
            }
            v
        })
        .collect();
    Subspace::span(cols, &vectors)
}

/// Canonical basis of the column space of `m`.
pub fn image_basis<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    let image = Subspace::span(m.rows(), &m.columns());
    debug_assert_eq!(
        image.dim() + (m.cols() - rank(m)),
        m.cols(),
        "rank-nullity violated"
    );
    image
}
