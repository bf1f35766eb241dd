use nalgebra::DMatrix;

use crate::core::dataset::Dataset;
use crate::error::{Error, Result};

/// Symmetric matrix of pairwise Euclidean distances.
///
/// `d_min` is the smallest strictly positive entry; it is `None` when all
/// rows coincide (every distance is zero).
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    entries: DMatrix<f64>,
    d_min: Option<f64>,
    d_max: f64,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Smallest strictly positive distance, `None` when all rows coincide.
    pub fn d_min(&self) -> Option<f64> {
        self.d_min
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    /// True when every pairwise distance is zero.
    pub fn all_zero(&self) -> bool {
        self.d_min.is_none()
    }
}

/// Computes all pairwise Euclidean distances between dataset rows.
pub fn pairwise_distances(data: &Dataset) -> Result<DistanceMatrix> {
    let n = data.n();
    if n < 2 {
        return Err(Error::InsufficientPoints { needed: 2, got: n });
    }
    let x = data.values();
    let mut entries = DMatrix::zeros(n, n);
    let mut d_min = f64::INFINITY;
    let mut d_max: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (x.row(i) - x.row(j)).norm();
            entries[(i, j)] = d;
            entries[(j, i)] = d;
            if d > 0.0 && d < d_min {
                d_min = d;
            }
            if d > d_max {
                d_max = d;
            }
        }
    }
    let d_min = if d_min.is_finite() { Some(d_min) } else { None };
    Ok(DistanceMatrix {
        entries,
        d_min,
        d_max,
    })
}
