//! Agglomerative clustering of scale points by projector distance, the
//! pseudo-t^2 merge statistic, cluster-count selection, and medoid
//! extraction.

use nalgebra::DMatrix;

use crate::core::dataset::Dataset;
use crate::criteria::ratio_of_distortion;
use crate::error::{Error, Result};
use crate::scalespace::{projector_distance_matrix, ScalePoint};

/// Linkage criterion for merging clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linkage {
    #[default]
    Average,
    Single,
    Complete,
}

impl Linkage {
    pub fn name(&self) -> &'static str {
        match self {
            Linkage::Average => "average",
            Linkage::Single => "single",
            Linkage::Complete => "complete",
        }
    }
}

/// How the representative point of a cluster is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MedoidMode {
    /// Member minimizing the sum of projector distances to the cluster.
    #[default]
    Distance,
    /// Member maximizing the ratio of distortion at its own scale.
    Distortion,
}

impl MedoidMode {
    pub fn name(&self) -> &'static str {
        match self {
            MedoidMode::Distance => "distance",
            MedoidMode::Distortion => "distortion",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClusterConfig {
    pub linkage: Linkage,
    pub medoid: MedoidMode,
    /// Minimum pseudo-t^2 jump ratio that counts as a distinct break.
    pub jump_threshold: f64,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        ClusterConfig {
            linkage: Linkage::Average,
            medoid: MedoidMode::Distance,
            jump_threshold: 3.0,
        }
    }
}

/// One step of the agglomeration, with the quantities feeding pseudo-t^2.
#[derive(Debug, Clone)]
pub struct Merge {
    /// Members (original point indices) of the two clusters merged.
    pub members_a: Vec<usize>,
    pub members_b: Vec<usize>,
    /// Linkage height at which the merge happened.
    pub height: f64,
    pub sse_a: f64,
    pub sse_b: f64,
    pub sse_t: f64,
    pub pseudo_t2: f64,
}

impl Merge {
    pub fn size_a(&self) -> usize {
        self.members_a.len()
    }

    pub fn size_b(&self) -> usize {
        self.members_b.len()
    }
}

/// The pseudo-t^2 merge statistic
/// [SSE_t - (SSE_a + SSE_b)] (n_a + n_b - 2) / (SSE_a + SSE_b).
///
/// A zero denominator is resolved to +infinity when the joined cluster has
/// positive SSE and to 0 otherwise (e.g. two coincident singletons).
pub fn pseudo_t2(sse_a: f64, sse_b: f64, sse_t: f64, n_a: usize, n_b: usize) -> f64 {
    debug_assert!(n_a >= 1 && n_b >= 1);
    let denom = sse_a + sse_b;
    if denom == 0.0 {
        return if sse_t > 0.0 { f64::INFINITY } else { 0.0 };
    }
    let value = (sse_t - denom) * (n_a + n_b - 2) as f64 / denom;
    // SSE_t >= SSE_a + SSE_b in a metric space; clamp rounding residue
    value.max(0.0)
}

/// SSE of a cluster about its centroid, computed from pairwise distances:
/// in Euclidean geometry sum_i |x_i - c|^2 = (1/|C|) sum_{i<j} d_ij^2.
fn cluster_sse(members: &[usize], distances: &DMatrix<f64>) -> f64 {
    let mut sum = 0.0;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            sum += distances[(i, j)].powi(2);
        }
    }
    sum / members.len() as f64
}

struct Agglomerator<'a> {
    distances: &'a DMatrix<f64>,
    linkage: Linkage,
    clusters: Vec<Vec<usize>>,
    /// Pairwise linkage statistic between active clusters: summed distance
    /// for average linkage, min for single, max for complete.
    stat: Vec<Vec<f64>>,
}

impl<'a> Agglomerator<'a> {
    fn new(distances: &'a DMatrix<f64>, linkage: Linkage) -> Self {
        let n = distances.nrows();
        let clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut stat = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                stat[i][j] = distances[(i, j)];
            }
        }
        Agglomerator {
            distances,
            linkage,
            clusters,
            stat,
        }
    }

    fn linkage_value(&self, a: usize, b: usize) -> f64 {
        match self.linkage {
            Linkage::Average => {
                self.stat[a][b] / (self.clusters[a].len() * self.clusters[b].len()) as f64
            }
            Linkage::Single | Linkage::Complete => self.stat[a][b],
        }
    }

    fn closest_pair(&self) -> (usize, usize, f64) {
        let mut best = (0, 1, f64::INFINITY);
        for a in 0..self.clusters.len() {
            for b in (a + 1)..self.clusters.len() {
                let v = self.linkage_value(a, b);
                if v < best.2 {
                    best = (a, b, v);
                }
            }
        }
        best
    }

    fn merge(&mut self, a: usize, b: usize) {
        let removed = self.clusters[b].clone();
        // combined linkage statistic against every other cluster
        for c in 0..self.clusters.len() {
            if c == a || c == b {
                continue;
            }
            self.stat[a][c] = match self.linkage {
                Linkage::Average => self.stat[a][c] + self.stat[b][c],
                Linkage::Single => self.stat[a][c].min(self.stat[b][c]),
                Linkage::Complete => self.stat[a][c].max(self.stat[b][c]),
            };
            self.stat[c][a] = self.stat[a][c];
        }
        self.clusters[a].extend(removed);
        self.clusters[a].sort_unstable();
        self.clusters.remove(b);
        self.stat.remove(b);
        for row in &mut self.stat {
            row.remove(b);
        }
    }

    fn run(mut self) -> Vec<Merge> {
        let mut merges = Vec::with_capacity(self.clusters.len().saturating_sub(1));
        while self.clusters.len() > 1 {
            let (a, b, height) = self.closest_pair();
            let members_a = self.clusters[a].clone();
            let members_b = self.clusters[b].clone();
            let sse_a = cluster_sse(&members_a, self.distances);
            let sse_b = cluster_sse(&members_b, self.distances);
            let mut joined = members_a.clone();
            joined.extend(members_b.iter().copied());
            let sse_t = cluster_sse(&joined, self.distances);
            let t2 = pseudo_t2(sse_a, sse_b, sse_t, members_a.len(), members_b.len());
            merges.push(Merge {
                members_a,
                members_b,
                height,
                sse_a,
                sse_b,
                sse_t,
                pseudo_t2: t2,
            });
            self.merge(a, b);
        }
        merges
    }
}

/// Produces the full merge history for a symmetric distance matrix.
pub fn agglomerate(distances: &DMatrix<f64>, linkage: Linkage) -> Result<Vec<Merge>> {
    let n = distances.nrows();
    if n != distances.ncols() {
        return Err(Error::InvalidInput("distance matrix must be square".into()));
    }
    if n < 2 {
        return Err(Error::InsufficientPoints { needed: 2, got: n });
    }
    if distances.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidInput(
            "distance matrix entries must be finite and non-negative".into(),
        ));
    }
    Ok(Agglomerator::new(distances, linkage).run())
}

/// Picks the cluster count just before the largest relative jump of
/// pseudo-t^2 across consecutive merges; returns 1 when no jump ratio
/// exceeds the threshold.
///
/// Pairs where the earlier statistic is infinite are skipped: an infinite
/// value marks a degenerate zero-SSE merge, not a reference level.
pub fn choose_cluster_count(merges: &[Merge], jump_threshold: f64) -> usize {
    let n_points = merges.len() + 1;
    let mut best_ratio = 0.0f64;
    let mut best_at = None;
    for i in 0..merges.len().saturating_sub(1) {
        let prev = merges[i].pseudo_t2;
        let next = merges[i + 1].pseudo_t2;
        if !prev.is_finite() || !next.is_finite() || next <= 0.0 {
            continue;
        }
        let ratio = if prev > 0.0 { next / prev } else { f64::INFINITY };
        if ratio > best_ratio {
            best_ratio = ratio;
            best_at = Some(i + 1);
        }
    }
    match best_at {
        Some(jump_merge) if best_ratio > jump_threshold => n_points - jump_merge,
        _ => 1,
    }
}

/// Replays the merge history until `count` clusters remain. Labels are
/// assigned in order of each cluster's smallest member index.
pub fn cut_tree(merges: &[Merge], n_points: usize, count: usize) -> Vec<usize> {
    let count = count.clamp(1, n_points);
    let mut clusters: Vec<Vec<usize>> = (0..n_points).map(|i| vec![i]).collect();
    for merge in merges.iter().take(n_points - count) {
        let a = clusters
            .iter()
            .position(|c| c.contains(&merge.members_a[0]))
            .expect("merge history consistent");
        let b = clusters
            .iter()
            .position(|c| c.contains(&merge.members_b[0]))
            .expect("merge history consistent");
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        let moved = clusters.remove(drop);
        clusters[keep].extend(moved);
        clusters[keep].sort_unstable();
    }
    clusters.sort_by_key(|c| c[0]);
    let mut labels = vec![0; n_points];
    for (label, members) in clusters.iter().enumerate() {
        for &i in members {
            labels[i] = label;
        }
    }
    labels
}

/// Member minimizing the within-cluster distance sum; ties resolve to the
/// lowest index.
fn distance_medoid(members: &[usize], distances: &DMatrix<f64>) -> usize {
    let mut best = members[0];
    let mut best_sum = f64::INFINITY;
    for &i in members {
        let sum: f64 = members.iter().map(|&j| distances[(i, j)]).sum();
        if sum < best_sum {
            best_sum = sum;
            best = i;
        }
    }
    best
}

/// Result of clustering the non-empty points of a sweep.
#[derive(Debug, Clone)]
pub struct ScaleClustering {
    /// Indices (into the original sweep output) of the clustered points.
    pub point_indices: Vec<usize>,
    /// Cluster label per entry of `point_indices`.
    pub assignments: Vec<usize>,
    pub merges: Vec<Merge>,
    /// One original point index per cluster.
    pub medoids: Vec<usize>,
    pub chosen_cluster_count: usize,
}

impl ScaleClustering {
    /// Original point indices belonging to the given cluster.
    pub fn cluster_members(&self, label: usize) -> Vec<usize> {
        self.point_indices
            .iter()
            .zip(&self.assignments)
            .filter(|(_, &l)| l == label)
            .map(|(&i, _)| i)
            .collect()
    }
}

/// Full pipeline: projector distances, agglomeration, cluster-count
/// selection, tree cut, medoid extraction.
pub fn cluster_scales(
    points: &[ScalePoint],
    data: &Dataset,
    k: usize,
    config: &ClusterConfig,
) -> Result<ScaleClustering> {
    let point_indices: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.empty)
        .map(|(i, _)| i)
        .collect();
    if point_indices.len() < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            got: point_indices.len(),
        });
    }
    let non_empty: Vec<&ScalePoint> = point_indices.iter().map(|&i| &points[i]).collect();
    let distances = projector_distance_matrix(&non_empty)?;
    let merges = agglomerate(&distances, config.linkage)?;
    let chosen = choose_cluster_count(&merges, config.jump_threshold);
    let assignments = cut_tree(&merges, non_empty.len(), chosen);

    let mut medoids = Vec::with_capacity(chosen);
    for label in 0..chosen {
        let members: Vec<usize> = (0..non_empty.len())
            .filter(|&i| assignments[i] == label)
            .collect();
        let local = match config.medoid {
            MedoidMode::Distance => distance_medoid(&members, &distances),
            MedoidMode::Distortion => distortion_medoid(&members, &non_empty, data, k)?,
        };
        medoids.push(point_indices[local]);
    }
    Ok(ScaleClustering {
        point_indices,
        assignments,
        merges,
        medoids,
        chosen_cluster_count: chosen,
    })
}

/// Member maximizing the ratio of distortion at its own scale; ties
/// resolve to the lowest index.
fn distortion_medoid(
    members: &[usize],
    non_empty: &[&ScalePoint],
    data: &Dataset,
    k: usize,
) -> Result<usize> {
    let mut best = members[0];
    let mut best_ratio = f64::NEG_INFINITY;
    for &i in members {
        let point = non_empty[i];
        let dec = point
            .decomposition
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("empty point in cluster".into()))?;
        let report = ratio_of_distortion(data, dec, k, &point.interval)?;
        if let Some(ratio) = report.ratio {
            if ratio > best_ratio {
                best_ratio = ratio;
                best = i;
            }
        }
    }
    Ok(best)
}
