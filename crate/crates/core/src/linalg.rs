//! Dense real linear algebra helpers backed by nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::tolerances::NULL_SPACE_REL;

/// Singular values below this are zero whatever the scale of the matrix;
/// every matrix handled here has entries of order one.
const ABS_FLOOR: f64 = 1e-11;

/// Orthonormal basis of the null space of the `rows × cols` matrix `m`,
/// treating singular values below `NULL_SPACE_REL · σ_max` as zero.
pub fn null_space(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    null_space_rel(m, NULL_SPACE_REL)
}

pub fn null_space_rel(m: &DMatrix<f64>, rel: f64) -> Vec<Vec<f64>> {
    null_space_with(m, |s, smax| s < rel * smax || s < ABS_FLOOR)
}

/// Null space with an absolute singular-value cutoff.
pub fn null_space_abs(m: &DMatrix<f64>, tol: f64) -> Vec<Vec<f64>> {
    null_space_with(m, |s, _| s <= tol)
}

fn null_space_with(m: &DMatrix<f64>, is_zero: impl Fn(f64, f64) -> bool) -> Vec<Vec<f64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    // Pad so the SVD returns a full right-singular basis.
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma = &svd.singular_values;
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (r, &s) in sigma.iter().enumerate() {
        if smax == 0.0 || is_zero(s, smax) {
            out.push(v_t.row(r).iter().cloned().collect());
        }
    }
    out
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = idx
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().cloned().collect())
        .collect();
    (vals, vecs)
}

/// Numerical rank with the relative singular-value cutoff.
pub fn rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s >= NULL_SPACE_REL * smax).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((v[0] + v[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(rank(&m), 1);
    }
}
