use nalgebra::DMatrix;

use crate::core::dataset::Dataset;
use crate::core::scale::WeightMask;
use crate::error::{Error, Result};

/// Graph Laplacian of the pair-selection mask: diagonal row-weight sums,
/// off-diagonal negated weights. Rows and columns sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedLaplacian {
    entries: DMatrix<f64>,
}

impl WeightedLaplacian {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// The m-by-m matrix X^T L X whose top eigenvectors are the scale-restricted
/// principal components. With all-ones weights it equals n^2 times the
/// covariance of the centered data.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterMatrix {
    entries: DMatrix<f64>,
}

impl ScatterMatrix {
    pub fn m(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Wraps a symmetric matrix as a scatter matrix (test helper).
    pub fn from_matrix(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidInput("scatter matrix must be square".into()));
        }
        Ok(ScatterMatrix { entries })
    }
}

/// Builds the weighted Laplacian from a binary mask.
pub fn laplacian(mask: &WeightMask) -> WeightedLaplacian {
    let n = mask.n();
    let w = mask.weights();
    let mut entries = DMatrix::zeros(n, n);
    for i in 0..n {
        let row_sum: f64 = w.row(i).sum();
        entries[(i, i)] = row_sum;
        for j in 0..n {
            if i != j {
                entries[(i, j)] = -w[(i, j)];
            }
        }
    }
    WeightedLaplacian { entries }
}

/// Computes X^T L X for centered data.
pub fn scatter_matrix(data: &Dataset, lap: &WeightedLaplacian) -> Result<ScatterMatrix> {
    if !data.is_centered() {
        return Err(Error::InvalidInput("data must be centered".into()));
    }
    if data.n() != lap.n() {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: {} rows vs {}x{} Laplacian",
            data.n(),
            lap.n(),
            lap.n()
        )));
    }
    let x = data.values();
    let mut entries = x.transpose() * lap.entries() * x;
    // enforce exact symmetry against rounding
    let m = entries.nrows();
    for a in 0..m {
        for b in (a + 1)..m {
            let s = 0.5 * (entries[(a, b)] + entries[(b, a)]);
            entries[(a, b)] = s;
            entries[(b, a)] = s;
        }
    }
    Ok(ScatterMatrix { entries })
}
