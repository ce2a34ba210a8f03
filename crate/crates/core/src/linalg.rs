//! Small dense linear-algebra helpers shared by the modules.

use nalgebra::{DMatrix, DVector, Matrix3, SymmetricEigen};

use crate::C64;

/// Eigen-decomposition of a real symmetric matrix with eigenvalues sorted in
/// decreasing order (columns of the returned matrix follow the same order).
pub(crate) fn sym_eigen_desc(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

pub(crate) fn sym_eigen3_desc(m: &Matrix3<f64>) -> ([f64; 3], Matrix3<f64>) {
    let (values, vectors) = sym_eigen_desc(&DMatrix::from_column_slice(3, 3, m.as_slice()));
    let mut out = Matrix3::zeros();
    out.copy_from(&vectors);
    ([values[0], values[1], values[2]], out)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub(crate) fn herm_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Lexicographically largest unit vector in the span of orthonormal `basis`.
///
/// Greedy: project the first coordinate axis onto the span, and fall back to
/// the next axis whenever the projection vanishes. The result always has a
/// positive first nonzero component.
pub(crate) fn lex_max_unit(basis: &[DVector<f64>], eps: f64) -> DVector<f64> {
    let dim = basis[0].len();
    // vectors of the span that are zero on the already-fixed coordinates
    let mut span: Vec<DVector<f64>> = basis.to_vec();
    for axis in 0..dim {
        let proj = span
            .iter()
            .fold(DVector::zeros(dim), |acc, b| acc + b * b[axis]);
        let norm = proj.norm();
        if norm > eps {
            return proj / norm;
        }
        span = restrict_zero(&span, axis, eps);
        if span.is_empty() {
            break;
        }
    }
    basis[0].clone()
}

/// Orthonormal basis of the subspace of span(`basis`) with coordinate `axis` = 0.
fn restrict_zero(basis: &[DVector<f64>], axis: usize, eps: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    // the coordinate functional restricted to the span is ~0, so the span is unchanged
    for b in basis {
        let mut v = b.clone();
        v[axis] = 0.0;
        for o in &out {
            let c = o.dot(&v);
            v -= o * c;
        }
        let n = v.norm();
        if n > eps {
            out.push(v / n);
        }
    }
    out
}
