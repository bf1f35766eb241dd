use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::core::laplacian::ScatterMatrix;
use crate::error::{Error, Result};

/// Full spectral decomposition of a scatter matrix: eigenvalues sorted
/// descending, orthonormal eigenvectors as matching columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl EigenDecomposition {
    pub fn m(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Columns are eigenvectors aligned with `eigenvalues`.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> DVector<f64> {
        self.eigenvectors.column(i).into_owned()
    }

    /// The m-by-k matrix of the top-k eigenvectors.
    pub fn top_k(&self, k: usize) -> DMatrix<f64> {
        self.eigenvectors.columns(0, k).into_owned()
    }
}

/// Flips each column so its largest-magnitude component is positive.
/// The first index attains ties, keeping the convention deterministic.
pub(crate) fn sign_normalize(vectors: &mut DMatrix<f64>) {
    for mut col in vectors.column_iter_mut() {
        let mut best = 0;
        let mut best_abs = 0.0f64;
        for (idx, v) in col.iter().enumerate() {
            if v.abs() > best_abs {
                best_abs = v.abs();
                best = idx;
            }
        }
        if col[best] < 0.0 {
            col.neg_mut();
        }
    }
}

/// Symmetrizes and diagonalizes a scatter matrix.
pub fn eigendecompose(m: &ScatterMatrix) -> Result<EigenDecomposition> {
    let a = m.entries();
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "non-finite entry in scatter matrix".into(),
        ));
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let dim = eig.eigenvalues.len();

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("finite eigenvalues")
    });

    let eigenvalues = DVector::from_fn(dim, |i, _| eig.eigenvalues[order[i]]);
    let mut eigenvectors = DMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    sign_normalize(&mut eigenvectors);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    fn decompose(entries: DMatrix<f64>) -> EigenDecomposition {
        eigendecompose(&ScatterMatrix::from_matrix(entries).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_matrix() {
        let e = decompose(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]));
        assert_abs_diff_eq!(e.eigenvalues()[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.eigenvalues()[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.eigenvector(0)[0].abs(), 1.0, epsilon = 1e-12);
        // sign convention: largest-magnitude component positive
        assert!(e.eigenvector(0)[0] > 0.0);
    }

    #[test]
    fn identity_full_degeneracy() {
        let e = decompose(DMatrix::identity(3, 3));
        for i in 0..3 {
            assert_abs_diff_eq!(e.eigenvalues()[i], 1.0, epsilon = 1e-12);
            for j in 0..3 {
                let dot = e.eigenvector(i).dot(&e.eigenvector(j));
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, expected, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn hand_eigensolve_2x2() {
        let e = decompose(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]));
        assert_abs_diff_eq!(e.eigenvalues()[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.eigenvalues()[1], 1.0, epsilon = 1e-12);
        let v = e.eigenvector(0);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(v[0], inv_sqrt2, epsilon = 1e-12);
        assert_abs_diff_eq!(v[1], inv_sqrt2, epsilon = 1e-12);
    }

    #[test]
    fn residual_and_ordering_on_random_symmetric() {
        let raw = DMatrix::from_fn(5, 5, |i, j| ((i * 7 + j * 3) as f64 * 0.917).cos());
        let sym = (&raw + raw.transpose()) * 0.5;
        let e = decompose(sym.clone());
        for i in 0..5 {
            if i > 0 {
                assert!(e.eigenvalues()[i - 1] >= e.eigenvalues()[i]);
            }
            let v = e.eigenvector(i);
            let resid = &sym * &v - &v * e.eigenvalues()[i];
            let tol = 1e-7 * (1.0 + e.eigenvalues()[i].abs());
            for r in resid.iter() {
                assert!(r.abs() <= tol, "residual {r} exceeds {tol}");
            }
        }
    }

    #[test]
    fn rejects_non_finite() {
        let m = ScatterMatrix::from_matrix(DMatrix::from_row_slice(
            2,
            2,
            &[1.0, f64::NAN, f64::NAN, 1.0],
        ))
        .unwrap();
        assert!(matches!(eigendecompose(&m), Err(Error::InvalidInput(_))));
    }
}
