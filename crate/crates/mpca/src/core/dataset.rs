use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// How raw columns are rescaled before centering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizeMode {
    #[default]
    None,
    /// Divide each column by its mean. Requires nonzero column means.
    MeanDivide,
    /// Center and divide by the sample standard deviation
    /// ((n-1)-denominator). Requires nonzero column deviations.
    ZScore,
}

impl NormalizeMode {
    pub fn name(&self) -> &'static str {
        match self {
            NormalizeMode::None => "none",
            NormalizeMode::MeanDivide => "mean",
            NormalizeMode::ZScore => "zscore",
        }
    }
}

/// A centered data matrix with rows as observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: DMatrix<f64>,
    mean: DVector<f64>,
    centered: bool,
}

impl Dataset {
    /// Number of observations.
    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    /// Number of coordinates.
    pub fn m(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// The column means subtracted during centering.
    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn is_centered(&self) -> bool {
        self.centered
    }

    pub fn row(&self, i: usize) -> DVector<f64> {
        self.values.row(i).transpose()
    }
}

/// Subtracts the column means from a raw matrix.
pub fn center(raw: &DMatrix<f64>) -> Result<Dataset> {
    let (n, m) = raw.shape();
    if n < 2 {
        return Err(Error::InsufficientPoints { needed: 2, got: n });
    }
    if m < 1 {
        return Err(Error::InvalidInput("need at least 1 column".into()));
    }
    if raw.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite entry in data".into()));
    }
    let mean = DVector::from_fn(m, |j, _| raw.column(j).sum() / n as f64);
    let mut values = raw.clone();
    for j in 0..m {
        values.column_mut(j).add_scalar_mut(-mean[j]);
    }
    Ok(Dataset {
        values,
        mean,
        centered: true,
    })
}

fn column_mean(raw: &DMatrix<f64>, j: usize) -> f64 {
    raw.column(j).sum() / raw.nrows() as f64
}

/// Rescales columns of a raw matrix per the given mode. Returns the raw
/// matrix untouched for `None`.
pub fn normalize(raw: &DMatrix<f64>, mode: NormalizeMode) -> Result<DMatrix<f64>> {
    match mode {
        NormalizeMode::None => Ok(raw.clone()),
        NormalizeMode::MeanDivide => {
            let mut out = raw.clone();
            for j in 0..raw.ncols() {
                let mu = column_mean(raw, j);
                if mu == 0.0 {
                    return Err(Error::DegenerateColumn {
                        column: j,
                        reason: "zero mean, cannot mean-divide".into(),
                    });
                }
                out.column_mut(j).scale_mut(1.0 / mu);
            }
            Ok(out)
        }
        NormalizeMode::ZScore => {
            let n = raw.nrows();
            if n < 2 {
                return Err(Error::InsufficientPoints { needed: 2, got: n });
            }
            let mut out = raw.clone();
            for j in 0..raw.ncols() {
                let mu = column_mean(raw, j);
                let ss: f64 = raw.column(j).iter().map(|v| (v - mu).powi(2)).sum();
                let sd = (ss / (n as f64 - 1.0)).sqrt();
                if sd == 0.0 {
                    return Err(Error::DegenerateColumn {
                        column: j,
                        reason: "zero standard deviation, cannot z-score".into(),
                    });
                }
                for i in 0..n {
                    out[(i, j)] = (raw[(i, j)] - mu) / sd;
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn center_two_point_symmetry() {
        let raw = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 3.0, 3.0]);
        let ds = center(&raw).unwrap();
        assert_eq!(
            ds.values(),
            &DMatrix::from_row_slice(2, 2, &[-1.0, -1.0, 1.0, 1.0])
        );
        assert_eq!(ds.mean(), &DVector::from_vec(vec![2.0, 2.0]));
        assert!(ds.is_centered());
    }

    #[test]
    fn center_zero_mean_is_identity() {
        let raw = DMatrix::from_row_slice(2, 2, &[-1.0, 2.0, 1.0, -2.0]);
        let ds = center(&raw).unwrap();
        assert_eq!(ds.values(), &raw);
        assert_eq!(ds.mean(), &DVector::from_vec(vec![0.0, 0.0]));
    }

    #[test]
    fn center_hand_means() {
        let raw = DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 0.0, 0.0, 3.0, 0.0]);
        let ds = center(&raw).unwrap();
        assert_eq!(
            ds.values(),
            &DMatrix::from_row_slice(3, 2, &[-1.0, 0.0, -1.0, 0.0, 2.0, 0.0])
        );
        assert_eq!(ds.mean(), &DVector::from_vec(vec![1.0, 0.0]));
    }

    #[test]
    fn center_rejects_single_row() {
        let raw = DMatrix::from_row_slice(1, 2, &[1.0, 2.0]);
        assert!(matches!(
            center(&raw),
            Err(Error::InsufficientPoints { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn centered_columns_sum_to_zero() {
        let raw = DMatrix::from_fn(7, 3, |i, j| (i * 3 + j) as f64 * 0.37 + 1.0);
        let ds = center(&raw).unwrap();
        for j in 0..3 {
            assert_abs_diff_eq!(ds.values().column(j).sum(), 0.0, epsilon = 1e-9 * 7.0);
        }
    }

    #[test]
    fn normalize_none_is_identity() {
        let raw = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(normalize(&raw, NormalizeMode::None).unwrap(), raw);
    }

    #[test]
    fn normalize_mean_divide() {
        let raw = DMatrix::from_row_slice(2, 1, &[2.0, 4.0]);
        let out = normalize(&raw, NormalizeMode::MeanDivide).unwrap();
        assert_abs_diff_eq!(out[(0, 0)], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out[(1, 0)], 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn normalize_zscore_sample_std() {
        // column [0, 2]: mean 1, (n-1)-denominator std = sqrt(2)
        let raw = DMatrix::from_row_slice(2, 1, &[0.0, 2.0]);
        let out = normalize(&raw, NormalizeMode::ZScore).unwrap();
        let sd = std::f64::consts::SQRT_2;
        assert_abs_diff_eq!(out[(0, 0)], -1.0 / sd, epsilon = 1e-15);
        assert_abs_diff_eq!(out[(1, 0)], 1.0 / sd, epsilon = 1e-15);
    }

    #[test]
    fn normalize_mean_divide_zero_mean_errors() {
        let raw = DMatrix::from_row_slice(2, 1, &[-1.0, 1.0]);
        match normalize(&raw, NormalizeMode::MeanDivide) {
            Err(Error::DegenerateColumn { column, .. }) => assert_eq!(column, 0),
            other => panic!("expected degenerate column, got {other:?}"),
        }
    }

    #[test]
    fn normalize_zscore_constant_column_errors() {
        let raw = DMatrix::from_row_slice(3, 2, &[1.0, 5.0, 2.0, 5.0, 3.0, 5.0]);
        match normalize(&raw, NormalizeMode::ZScore) {
            Err(Error::DegenerateColumn { column, .. }) => assert_eq!(column, 1),
            other => panic!("expected degenerate column, got {other:?}"),
        }
    }
}
