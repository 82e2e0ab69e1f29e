//! Exact Gaussian elimination, used for bijectivity of basis-image
//! matrices.

use crate::scalar::Scalar;

/// Decides invertibility of a square matrix given as column vectors.
pub(crate) fn is_invertible(columns: Vec<Vec<Scalar>>) -> bool {
    let n = columns.len();
    if columns.iter().any(|c| c.len() != n) {
        return false;
    }
    // Row-major working copy.
    let mut m: Vec<Vec<Scalar>> = (0..n)
        .map(|r| (0..n).map(|c| columns[c][r].clone()).collect())
        .collect();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return false,
        };
        m.swap(col, pivot_row);
        let pivot_inv = m[col][col].inverse().expect("pivot is nonzero");
        let pivot_tail: Vec<Scalar> = m[col][col..].to_vec();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &pivot_inv;
            for (offset, pivot_value) in pivot_tail.iter().enumerate() {
                let delta = &factor * pivot_value;
                row[col + offset] = &row[col + offset] - &delta;
            }
        }
    }
    true
}
