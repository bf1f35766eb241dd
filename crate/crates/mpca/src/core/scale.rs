use nalgebra::DMatrix;

use crate::core::distance::DistanceMatrix;
use crate::error::{Error, Result};

/// A distance interval (l, u), either raw or standard.
///
/// Standard intervals hold fractions in [0, 1] that are resolved against
/// the analyzed dataset's maximum pairwise distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleInterval {
    lower: f64,
    upper: f64,
    standard: bool,
}

impl ScaleInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidInput("non-finite scale bound".into()));
        }
        if lower < 0.0 {
            return Err(Error::InvalidInput(format!(
                "scale lower bound must be >= 0, got {lower}"
            )));
        }
        if lower >= upper {
            return Err(Error::InvalidInput(format!(
                "scale requires lower < upper, got ({lower}, {upper})"
            )));
        }
        Ok(ScaleInterval {
            lower,
            upper,
            standard: false,
        })
    }

    pub fn standard(lower: f64, upper: f64) -> Result<Self> {
        let mut s = Self::new(lower, upper)?;
        if upper > 1.0 {
            return Err(Error::InvalidInput(format!(
                "standard scale bounds must lie in [0, 1], got ({lower}, {upper})"
            )));
        }
        s.standard = true;
        Ok(s)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// Resolved (l, u) in raw distance units.
    pub fn resolve(&self, d_max: f64) -> (f64, f64) {
        if self.standard {
            (self.lower * d_max, self.upper * d_max)
        } else {
            (self.lower, self.upper)
        }
    }
}

/// Symmetric binary pair-selection mask.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMask {
    weights: DMatrix<f64>,
    selected_pair_count: usize,
}

impl WeightMask {
    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    /// 0/1 entries, zero diagonal.
    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn is_selected(&self, i: usize, j: usize) -> bool {
        self.weights[(i, j)] != 0.0
    }

    /// Count of selected unordered pairs i < j.
    pub fn selected_pair_count(&self) -> usize {
        self.selected_pair_count
    }

    pub fn total_pairs(&self) -> usize {
        let n = self.n();
        n * (n - 1) / 2
    }

    /// All-ones mask (complete graph), used for the unweighted reduction.
    pub fn all_ones(n: usize) -> Self {
        let mut weights = DMatrix::from_element(n, n, 1.0);
        weights.fill_diagonal(0.0);
        WeightMask {
            weights,
            selected_pair_count: n * (n - 1) / 2,
        }
    }

    /// Builds a mask from an explicit upper-triangle predicate (test and
    /// oracle helper).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut weights = DMatrix::zeros(n, n);
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if f(i, j) {
                    weights[(i, j)] = 1.0;
                    weights[(j, i)] = 1.0;
                    count += 1;
                }
            }
        }
        WeightMask {
            weights,
            selected_pair_count: count,
        }
    }
}

/// Selects pairs whose unsquared distance lies in the resolved interval,
/// inclusive at both ends.
pub fn binary_weights(dist: &DistanceMatrix, scale: &ScaleInterval) -> WeightMask {
    let (l, u) = scale.resolve(dist.d_max());
    WeightMask::from_fn(dist.n(), |i, j| {
        let d = dist.get(i, j);
        l <= d && d <= u
    })
}
