//! The scale plane: a standard-scale lattice over the triangle of
//! admissible intervals, a parallel sweep of scale-restricted PCA over it,
//! and clustering of the resulting projectors.

pub mod cluster;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::core::dataset::Dataset;
use crate::core::distance::DistanceMatrix;
use crate::core::eigen::EigenDecomposition;
use crate::core::pipeline::mpca_with_distances;
use crate::core::scale::ScaleInterval;
use crate::error::{Error, Result};
use crate::projector::{projector_distance, projector_from_matrix, Projector};

pub use cluster::{
    agglomerate, choose_cluster_count, cluster_scales, pseudo_t2, ClusterConfig, Linkage,
    MedoidMode, Merge, ScaleClustering,
};

/// Default standard-scale lattice spacing.
pub const DEFAULT_STEP: f64 = 0.05;

/// Lattice of standard-scale intervals over the admissible triangle.
#[derive(Debug, Clone)]
pub struct ScaleGrid {
    points: Vec<ScaleInterval>,
    step: f64,
    d_min: Option<f64>,
    d_max: f64,
}

impl ScaleGrid {
    pub fn points(&self) -> &[ScaleInterval] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn d_min(&self) -> Option<f64> {
        self.d_min
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }
}

/// One evaluated point of the scale plane.
#[derive(Debug, Clone)]
pub struct ScalePoint {
    pub interval: ScaleInterval,
    pub decomposition: Option<EigenDecomposition>,
    pub projector: Option<Projector>,
    pub selected_pair_count: usize,
    pub empty: bool,
}

/// Enumerates lattice points (l, u) = (i*step, j*step) with i < j and
/// u <= 1; l = 0 appears only when `include_zero_lower` is set.
pub fn build_grid(
    dist: &DistanceMatrix,
    step: f64,
    include_zero_lower: bool,
) -> Result<ScaleGrid> {
    if !(step > 0.0 && step < 1.0 + 1e-12) {
        return Err(Error::InvalidInput(format!(
            "step must lie in (0, 1], got {step}"
        )));
    }
    let max_idx = (1.0 / step + 1e-9).floor() as usize;
    let start = if include_zero_lower { 0 } else { 1 };
    let mut points = Vec::new();
    for i in start..max_idx {
        for j in (i + 1)..=max_idx {
            let l = i as f64 * step;
            let u = (j as f64 * step).min(1.0);
            points.push(ScaleInterval::standard(l, u)?);
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyGrid { step });
    }
    Ok(ScaleGrid {
        points,
        step,
        d_min: dist.d_min(),
        d_max: dist.d_max(),
    })
}

/// Evaluates scale-restricted PCA at every grid point. Points whose
/// interval selects no pair come back flagged empty. Evaluation is
/// parallel; output order always matches grid order.
pub fn sweep(
    data: &Dataset,
    dist: &DistanceMatrix,
    grid: &ScaleGrid,
    k: usize,
) -> Result<Vec<ScalePoint>> {
    if k < 1 || k >= data.m() {
        return Err(Error::InvalidInput(format!(
            "sweep requires 1 <= k < m = {}, got {k}",
            data.m()
        )));
    }
    grid.points
        .par_iter()
        .map(|interval| evaluate_point(data, dist, interval, k))
        .collect()
}

fn evaluate_point(
    data: &Dataset,
    dist: &DistanceMatrix,
    interval: &ScaleInterval,
    k: usize,
) -> Result<ScalePoint> {
    match mpca_with_distances(data, dist, interval, k) {
        Ok(res) => {
            let projector = projector_from_matrix(&res.decomposition.top_k(k))?;
            Ok(ScalePoint {
                interval: *interval,
                decomposition: Some(res.decomposition),
                projector: Some(projector),
                selected_pair_count: res.mask.selected_pair_count(),
                empty: false,
            })
        }
        Err(Error::EmptyScale { .. }) => Ok(ScalePoint {
            interval: *interval,
            decomposition: None,
            projector: None,
            selected_pair_count: 0,
            empty: true,
        }),
        Err(e) => Err(e),
    }
}

/// Frobenius distances between the projectors of non-empty points.
pub fn projector_distance_matrix(points: &[&ScalePoint]) -> Result<DMatrix<f64>> {
    let n = points.len();
    let mut out = DMatrix::zeros(n, n);
    for (p, point) in points.iter().enumerate() {
        let a = point
            .projector
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("scale point {p} is empty")))?;
        for (q, other) in points.iter().enumerate().skip(p + 1) {
            let b = other
                .projector
                .as_ref()
                .ok_or_else(|| Error::InvalidInput(format!("scale point {q} is empty")))?;
            let d = projector_distance(a, b)?;
            out[(p, q)] = d;
            out[(q, p)] = d;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{center, mpca, pairwise_distances};
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    fn toy_distances() -> (Dataset, DistanceMatrix) {
        let raw = DMatrix::from_fn(10, 3, |i, j| ((i * 7 + j * 3 + 1) as f64 * 0.53).sin());
        let ds = center(&raw).unwrap();
        let dist = pairwise_distances(&ds).unwrap();
        (ds, dist)
    }

    #[test]
    fn grid_step_01_has_55_points() {
        let (_, dist) = toy_distances();
        let grid = build_grid(&dist, 0.1, true).unwrap();
        assert_eq!(grid.len(), 55);
        assert!(grid
            .points()
            .iter()
            .all(|p| p.lower() < p.upper() && p.upper() <= 1.0 + 1e-12));
    }

    #[test]
    fn grid_step_05_enumerates_lattice() {
        let (_, dist) = toy_distances();
        let grid = build_grid(&dist, 0.5, true).unwrap();
        let pts: Vec<(f64, f64)> = grid.points().iter().map(|p| (p.lower(), p.upper())).collect();
        assert_eq!(pts, vec![(0.0, 0.5), (0.0, 1.0), (0.5, 1.0)]);
    }

    #[test]
    fn grid_step_one_single_point() {
        let (_, dist) = toy_distances();
        let grid = build_grid(&dist, 1.0, true).unwrap();
        let pts: Vec<(f64, f64)> = grid.points().iter().map(|p| (p.lower(), p.upper())).collect();
        assert_eq!(pts, vec![(0.0, 1.0)]);
    }

    #[test]
    fn grid_without_zero_lower() {
        let (_, dist) = toy_distances();
        let grid = build_grid(&dist, 0.5, false).unwrap();
        let pts: Vec<(f64, f64)> = grid.points().iter().map(|p| (p.lower(), p.upper())).collect();
        assert_eq!(pts, vec![(0.5, 1.0)]);
    }

    #[test]
    fn grid_step_one_without_zero_is_empty() {
        let (_, dist) = toy_distances();
        assert!(matches!(
            build_grid(&dist, 1.0, false),
            Err(Error::EmptyGrid { .. })
        ));
    }

    #[test]
    fn sweep_full_scale_point_matches_direct_call() {
        let (ds, dist) = toy_distances();
        let grid = build_grid(&dist, 1.0, true).unwrap();
        let points = sweep(&ds, &dist, &grid, 2).unwrap();
        assert_eq!(points.len(), 1);
        let direct = mpca(&ds, &ScaleInterval::standard(0.0, 1.0).unwrap(), 2).unwrap();
        let p_direct = projector_from_matrix(&direct.decomposition.top_k(2)).unwrap();
        let d = projector_distance(points[0].projector.as_ref().unwrap(), &p_direct).unwrap();
        assert!(d < 1e-8);
    }

    #[test]
    fn sweep_flags_empty_points() {
        // two tight clusters far apart: a narrow mid band selects nothing
        let mut rows = Vec::new();
        for i in 0..5 {
            rows.push(vec![i as f64 * 0.01, 0.0]);
            rows.push(vec![100.0 + i as f64 * 0.01, 0.0]);
        }
        let raw = DMatrix::from_fn(10, 2, |i, j| rows[i][j]);
        let ds = center(&raw).unwrap();
        let dist = pairwise_distances(&ds).unwrap();
        let grid = build_grid(&dist, 0.25, true).unwrap();
        let points = sweep(&ds, &dist, &grid, 1).unwrap();
        let mid = points
            .iter()
            .find(|p| p.interval.lower() == 0.25 && p.interval.upper() == 0.5)
            .unwrap();
        assert!(mid.empty);
        assert_eq!(mid.selected_pair_count, 0);
        assert!(mid.projector.is_none());
    }

    #[test]
    fn sweep_deterministic() {
        let (ds, dist) = toy_distances();
        let grid = build_grid(&dist, 0.2, true).unwrap();
        let a = sweep(&ds, &dist, &grid, 1).unwrap();
        let b = sweep(&ds, &dist, &grid, 1).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.empty, y.empty);
            assert_eq!(x.selected_pair_count, y.selected_pair_count);
            if let (Some(p), Some(q)) = (&x.projector, &y.projector) {
                assert_eq!(p.entries(), q.entries());
            }
        }
    }

    #[test]
    fn distance_matrix_matches_pairwise_oracle() {
        let (ds, dist) = toy_distances();
        let grid = build_grid(&dist, 0.2, true).unwrap();
        let points = sweep(&ds, &dist, &grid, 1).unwrap();
        let non_empty: Vec<&ScalePoint> = points.iter().filter(|p| !p.empty).collect();
        let dm = projector_distance_matrix(&non_empty).unwrap();
        for p in 0..non_empty.len() {
            assert_eq!(dm[(p, p)], 0.0);
            for q in 0..non_empty.len() {
                let oracle = projector_distance(
                    non_empty[p].projector.as_ref().unwrap(),
                    non_empty[q].projector.as_ref().unwrap(),
                )
                .unwrap();
                assert_abs_diff_eq!(dm[(p, q)], oracle, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn distance_matrix_rejects_empty_point() {
        let (ds, dist) = toy_distances();
        let grid = build_grid(&dist, 0.5, true).unwrap();
        let mut points = sweep(&ds, &dist, &grid, 1).unwrap();
        points[0].projector = None;
        points[0].empty = true;
        let refs: Vec<&ScalePoint> = points.iter().collect();
        assert!(projector_distance_matrix(&refs).is_err());
    }
}
