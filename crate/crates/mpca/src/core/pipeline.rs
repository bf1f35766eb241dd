use nalgebra::DMatrix;

use crate::core::dataset::Dataset;
use crate::core::distance::{pairwise_distances, DistanceMatrix};
use crate::core::eigen::{eigendecompose, EigenDecomposition};
use crate::core::laplacian::{laplacian, scatter_matrix};
use crate::core::scale::{binary_weights, ScaleInterval, WeightMask};
use crate::error::{Error, Result};

/// Output of a single scale-restricted PCA run.
#[derive(Debug, Clone)]
pub struct MpcaResult {
    pub decomposition: EigenDecomposition,
    /// n-by-k coordinates of the data in the top-k eigenvector basis.
    pub projections: DMatrix<f64>,
    pub mask: WeightMask,
}

/// Runs the full pipeline at one scale: weights, Laplacian, scatter,
/// eigendecomposition, projection onto the top-k components.
///
/// Fails with [`Error::EmptyScale`] when the interval selects no pair.
pub fn mpca(data: &Dataset, scale: &ScaleInterval, k: usize) -> Result<MpcaResult> {
    let dist = pairwise_distances(data)?;
    mpca_with_distances(data, &dist, scale, k)
}

/// Same as [`mpca`] but reuses a precomputed distance matrix, so sweeps
/// do not recompute it per grid point.
pub fn mpca_with_distances(
    data: &Dataset,
    dist: &DistanceMatrix,
    scale: &ScaleInterval,
    k: usize,
) -> Result<MpcaResult> {
    if !data.is_centered() {
        return Err(Error::InvalidInput("data must be centered".into()));
    }
    if k < 1 || k > data.m() {
        return Err(Error::InvalidInput(format!(
            "k must satisfy 1 <= k <= {}, got {k}",
            data.m()
        )));
    }
    if dist.n() != data.n() {
        return Err(Error::InvalidInput(
            "distance matrix does not match dataset".into(),
        ));
    }
    let mask = binary_weights(dist, scale);
    if mask.selected_pair_count() == 0 {
        let (l, u) = scale.resolve(dist.d_max());
        return Err(Error::EmptyScale { lower: l, upper: u });
    }
    let lap = laplacian(&mask);
    let scatter = scatter_matrix(data, &lap)?;
    let decomposition = eigendecompose(&scatter)?;
    let projections = data.values() * decomposition.top_k(k);
    Ok(MpcaResult {
        decomposition,
        projections,
        mask,
    })
}
