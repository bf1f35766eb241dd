//! Scale-selection diagnostics: the ratio of distortion, the percentage
//! of exempted pairs, and angles between recovered and reference
//! components.

use nalgebra::DVector;
use rayon::prelude::*;

use crate::core::dataset::Dataset;
use crate::core::distance::{pairwise_distances, DistanceMatrix};
use crate::core::eigen::EigenDecomposition;
use crate::core::pipeline::mpca_with_distances;
use crate::core::scale::{binary_weights, ScaleInterval, WeightMask};
use crate::error::{Error, Result};
use crate::projector::projector_from_matrix;
use crate::scalespace::ScaleGrid;

/// Distortion diagnostics at one scale.
#[derive(Debug, Clone)]
pub struct DistortionReport {
    /// Fraction of summed squared pair distances preserved by the
    /// projection, over in-scale pairs; `None` when the scale is empty.
    pub ratio: Option<f64>,
    pub selected_pairs: usize,
    pub total_pairs: usize,
    pub exempted_percent: f64,
    pub interval: ScaleInterval,
    pub k: usize,
}

/// Sums squared original and projected distances over the pairs selected
/// by the scale, using the same mask rule as the analysis itself.
pub fn ratio_of_distortion(
    data: &Dataset,
    decomposition: &EigenDecomposition,
    k: usize,
    scale: &ScaleInterval,
) -> Result<DistortionReport> {
    if k >= data.m() {
        return Err(Error::InvalidInput(format!(
            "ratio of distortion requires k < m = {}, got {k}",
            data.m()
        )));
    }
    let dist = pairwise_distances(data)?;
    ratio_of_distortion_with_distances(data, &dist, decomposition, k, scale)
}

pub fn ratio_of_distortion_with_distances(
    data: &Dataset,
    dist: &DistanceMatrix,
    decomposition: &EigenDecomposition,
    k: usize,
    scale: &ScaleInterval,
) -> Result<DistortionReport> {
    if decomposition.m() != data.m() {
        return Err(Error::InvalidInput(
            "decomposition does not match data dimension".into(),
        ));
    }
    let mask = binary_weights(dist, scale);
    let n = data.n();
    let projector = projector_from_matrix(&decomposition.top_k(k))?;
    let projected = data.values() * projector.entries();

    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if !mask.is_selected(i, j) {
                continue;
            }
            denominator += dist.get(i, j).powi(2);
            numerator += (projected.row(i) - projected.row(j)).norm_squared();
        }
    }
    let ratio = if mask.selected_pair_count() == 0 || denominator == 0.0 {
        None
    } else {
        Some(numerator / denominator)
    };
    Ok(DistortionReport {
        ratio,
        selected_pairs: mask.selected_pair_count(),
        total_pairs: mask.total_pairs(),
        exempted_percent: exempted_percentage(&mask),
        interval: *scale,
        k,
    })
}

/// 100 * (1 - selected / total) over unordered pairs.
pub fn exempted_percentage(mask: &WeightMask) -> f64 {
    100.0 * (1.0 - mask.selected_pair_count() as f64 / mask.total_pairs() as f64)
}

/// Angle in degrees, in [0, 90], between two axial directions.
pub fn component_angle(a: &DVector<f64>, b: &DVector<f64>) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput("vector length mismatch".into()));
    }
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::InvalidInput("zero vector has no direction".into()));
    }
    let cos = (a.dot(b).abs() / (na * nb)).clamp(0.0, 1.0);
    Ok(cos.acos().to_degrees())
}

/// Angle between the first scale-restricted component and a reference
/// direction, per grid point; `None` marks empty scales.
pub fn angle_sweep(
    data: &Dataset,
    dist: &DistanceMatrix,
    grid: &ScaleGrid,
    reference: &DVector<f64>,
) -> Result<Vec<(ScaleInterval, Option<f64>)>> {
    if reference.norm() == 0.0 {
        return Err(Error::InvalidInput("zero reference vector".into()));
    }
    grid.points()
        .par_iter()
        .map(|interval| {
            match mpca_with_distances(data, dist, interval, 1) {
                Ok(res) => {
                    let angle = component_angle(&res.decomposition.eigenvector(0), reference)?;
                    Ok((*interval, Some(angle)))
                }
                Err(Error::EmptyScale { .. }) => Ok((*interval, None)),
                Err(e) => Err(e),
            }
        })
        .collect()
}
