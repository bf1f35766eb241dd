//! Seeded synthetic datasets: a line with orthogonal outliers, a
//! three-level repeated pattern in the plane, and a plane embedded in
//! three dimensions with off-plane outliers. Every generator is a pure
//! function of its spec, so runs are reproducible bitwise.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Which synthetic family to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    LineWithOutliers,
    RepeatedPattern,
    PlaneWithOutliers,
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::LineWithOutliers => "line_with_outliers",
            GeneratorKind::RepeatedPattern => "repeated_pattern",
            GeneratorKind::PlaneWithOutliers => "plane_with_outliers",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "line_with_outliers" => Ok(GeneratorKind::LineWithOutliers),
            "repeated_pattern" => Ok(GeneratorKind::RepeatedPattern),
            "plane_with_outliers" => Ok(GeneratorKind::PlaneWithOutliers),
            other => Err(Error::InvalidInput(format!(
                "unknown generator kind '{other}'"
            ))),
        }
    }
}

fn symmetric_jitter(rng: &mut ChaCha8Rng, amplitude: f64) -> f64 {
    if amplitude > 0.0 {
        rng.gen_range(-amplitude..amplitude)
    } else {
        0.0
    }
}

/// Raw generated matrix plus the true directions it was built around.
#[derive(Debug, Clone)]
pub struct GeneratedData {
    pub values: DMatrix<f64>,
    /// Unit directions of the planted structure, outermost first.
    pub directions: Vec<DVector<f64>>,
    pub kind: GeneratorKind,
    pub seed: u64,
}

/// Line-with-outliers spec: inliers spread along a unit direction in the
/// plane, outliers placed orthogonally far off the line.
#[derive(Debug, Clone)]
pub struct LineSpec {
    pub inliers: usize,
    pub outliers: usize,
    /// Half-extent of the inlier spread along the line.
    pub half_length: f64,
    /// Orthogonal noise amplitude for inliers.
    pub noise: f64,
    /// Outlier orthogonal offset as a multiple of the inlier spread.
    pub outlier_factor: f64,
    pub seed: u64,
}

impl Default for LineSpec {
    fn default() -> Self {
        LineSpec {
            inliers: 50,
            outliers: 2,
            half_length: 5.0,
            noise: 0.05,
            outlier_factor: 3.0,
            seed: 7,
        }
    }
}

pub fn gen_line_with_outliers(spec: &LineSpec) -> Result<GeneratedData> {
    if spec.inliers < 10 {
        return Err(Error::InvalidInput("need at least 10 inliers".into()));
    }
    if spec.outliers < 1 {
        return Err(Error::InvalidInput("need at least 1 outlier".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // a fixed oblique direction keeps angles to the axes informative
    let direction = DVector::from_row_slice(&[2.0, 1.0]).normalize();
    let orthogonal = DVector::from_row_slice(&[-direction[1], direction[0]]);

    let n = spec.inliers + spec.outliers;
    let mut values = DMatrix::zeros(n, 2);
    for i in 0..spec.inliers {
        let t: f64 = rng.gen_range(-spec.half_length..spec.half_length);
        let e: f64 = symmetric_jitter(&mut rng, spec.noise);
        let p = &direction * t + &orthogonal * e;
        values.set_row(i, &p.transpose());
    }
    // outliers all sit on one side of the line so that the largest
    // pairwise distance is inlier-to-outlier and any scale cap strictly
    // below it drops every such pair
    let spread = 2.0 * spec.half_length;
    for o in 0..spec.outliers {
        let t: f64 = rng.gen_range(-0.2 * spec.half_length..0.2 * spec.half_length);
        let p = &direction * t + &orthogonal * (spec.outlier_factor * spread);
        values.set_row(spec.inliers + o, &p.transpose());
    }
    Ok(GeneratedData {
        values,
        directions: vec![direction],
        kind: GeneratorKind::LineWithOutliers,
        seed: spec.seed,
    })
}

/// Repeated-pattern spec: top-level centers along d1, mid-level offsets
/// along d2, inner segments along d3, with descending extent ratios.
#[derive(Debug, Clone)]
pub struct RepeatedPatternSpec {
    pub top_count: usize,
    pub mid_count: usize,
    pub inner_count: usize,
    /// Extents of the three levels relative to `base`, descending.
    pub ratios: [f64; 3],
    /// Extent of the outermost level in raw units.
    pub base: f64,
    /// Jitter amplitude relative to the innermost extent.
    pub noise: f64,
    pub seed: u64,
}

impl Default for RepeatedPatternSpec {
    fn default() -> Self {
        RepeatedPatternSpec {
            top_count: 4,
            mid_count: 3,
            inner_count: 7,
            ratios: [1.0, 0.18, 0.01],
            base: 1000.0,
            noise: 0.05,
            seed: 1,
        }
    }
}

pub fn gen_repeated_pattern(spec: &RepeatedPatternSpec) -> Result<GeneratedData> {
    let [r1, r2, r3] = spec.ratios;
    if !(r1 > r2 && r2 > r3 && r3 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "level ratios must be positive and descending, got {:?}",
            spec.ratios
        )));
    }
    if spec.top_count < 2 || spec.mid_count < 2 || spec.inner_count < 2 {
        return Err(Error::InvalidInput(
            "each level needs at least 2 elements".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d1 = DVector::from_row_slice(&[1.0, 0.0]);
    let d2 = DVector::from_row_slice(&[0.0, 1.0]);
    let d3 = DVector::from_row_slice(&[1.0, 1.0]).normalize();

    let top_extent = spec.base * r1;
    let mid_extent = spec.base * r2;
    let inner_extent = spec.base * r3;
    let jitter = spec.noise * inner_extent;

    let n = spec.top_count * spec.mid_count * spec.inner_count;
    let mut values = DMatrix::zeros(n, 2);
    let mut row = 0;
    for t in 0..spec.top_count {
        let top = &d1 * (t as f64 / (spec.top_count - 1) as f64 * top_extent);
        for m in 0..spec.mid_count {
            let mid = &top + &d2 * (m as f64 / (spec.mid_count - 1) as f64 * mid_extent);
            for i in 0..spec.inner_count {
                let along = i as f64 / (spec.inner_count - 1) as f64 * inner_extent;
                let jx = symmetric_jitter(&mut rng, jitter);
                let jy = symmetric_jitter(&mut rng, jitter);
                let p = &mid + &d3 * along + DVector::from_row_slice(&[jx, jy]);
                values.set_row(row, &p.transpose());
                row += 1;
            }
        }
    }
    Ok(GeneratedData {
        values,
        directions: vec![d1, d2, d3],
        kind: GeneratorKind::RepeatedPattern,
        seed: spec.seed,
    })
}

/// Plane-with-outliers spec: points uniform on a fixed plane in R^3 with
/// the first in-plane direction given the larger spread, plus outliers
/// along the plane normal.
#[derive(Debug, Clone)]
pub struct PlaneSpec {
    pub points: usize,
    pub outliers: usize,
    /// Half-extent along the first in-plane direction u.
    pub spread_u: f64,
    /// Half-extent along the second in-plane direction v.
    pub spread_v: f64,
    /// Outlier offset along the normal as a multiple of the data diameter.
    pub outlier_factor: f64,
    /// Isotropic jitter amplitude.
    pub noise: f64,
    pub seed: u64,
}

impl Default for PlaneSpec {
    fn default() -> Self {
        PlaneSpec {
            points: 200,
            outliers: 5,
            spread_u: 10.0,
            spread_v: 4.0,
            outlier_factor: 2.5,
            noise: 0.02,
            seed: 3,
        }
    }
}

/// First in-plane direction of the generated plane.
pub fn plane_direction_u() -> DVector<f64> {
    DVector::from_row_slice(&[0.8944, -0.4472, 0.0000]).normalize()
}

/// Second in-plane direction of the generated plane.
pub fn plane_direction_v() -> DVector<f64> {
    DVector::from_row_slice(&[0.1826, 0.3651, -0.9129]).normalize()
}

pub fn gen_plane_with_outliers(spec: &PlaneSpec) -> Result<GeneratedData> {
    if spec.points < 50 {
        return Err(Error::InvalidInput("need at least 50 points".into()));
    }
    if spec.outliers < 1 {
        return Err(Error::InvalidInput("need at least 1 outlier".into()));
    }
    if spec.spread_u <= spec.spread_v {
        return Err(Error::InvalidInput(
            "spread_u must exceed spread_v so that u is the first in-plane component".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let u = plane_direction_u();
    let v = plane_direction_v();
    let normal = DVector::from_row_slice(&[
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ])
    .normalize();

    let n = spec.points + spec.outliers;
    let mut values = DMatrix::zeros(n, 3);
    for i in 0..spec.points {
        let a: f64 = rng.gen_range(-spec.spread_u..spec.spread_u);
        let b: f64 = rng.gen_range(-spec.spread_v..spec.spread_v);
        let mut p = &u * a + &v * b;
        for c in 0..3 {
            p[c] += symmetric_jitter(&mut rng, spec.noise);
        }
        values.set_row(i, &p.transpose());
    }
    // all outliers sit on one side so their pair distances stay small and
    // inlier-outlier distances stay above the middle of the scale range
    let diameter = 2.0 * (spec.spread_u.powi(2) + spec.spread_v.powi(2)).sqrt();
    let offset = spec.outlier_factor * diameter;
    for o in 0..spec.outliers {
        let mut p = &normal * offset;
        for c in 0..3 {
            p[c] += rng.gen_range(-1.0..1.0);
        }
        values.set_row(spec.points + o, &p.transpose());
    }
    Ok(GeneratedData {
        values,
        directions: vec![u, v, normal],
        kind: GeneratorKind::PlaneWithOutliers,
        seed: spec.seed,
    })
}
