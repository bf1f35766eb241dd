//! Scale-restricted PCA: centering, pairwise distances, binary scale
//! weights, the weighted Laplacian and scatter matrix, and the spectral
//! decomposition that yields the components at a chosen scale.

pub mod dataset;
pub mod distance;
pub mod eigen;
pub mod laplacian;
pub mod pipeline;
pub mod scale;

pub use dataset::{center, normalize, Dataset, NormalizeMode};
pub use distance::{pairwise_distances, DistanceMatrix};
pub use eigen::{eigendecompose, EigenDecomposition};
pub use laplacian::{laplacian, scatter_matrix, ScatterMatrix, WeightedLaplacian};
pub use pipeline::{mpca, mpca_with_distances, MpcaResult};
pub use scale::{binary_weights, ScaleInterval, WeightMask};
