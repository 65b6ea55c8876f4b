//! Sample means, covariance and t-values of an `n x p` observation matrix.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Error, Result};

/// An `n x p` matrix of observations: rows are observations, columns are moments.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    values: Array2<f64>,
}

impl DataMatrix {
    /// Wraps `values`, checking `n >= 2`, `p >= 1` and that every entry is finite.
    pub fn new(values: Array2<f64>) -> Result<Self> {
        let (n, p) = values.dim();
        if n < 2 {
            return Err(Error::InvalidData(format!(
                "need at least 2 observations, got {n}"
            )));
        }
        if p < 1 {
            return Err(Error::InvalidData("need at least 1 column".into()));
        }
        if let Some(((i, j), v)) = values.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "entry ({i}, {j}) is not finite: {v}"
            )));
        }
        Ok(DataMatrix { values })
    }

    /// Builds a matrix from row vectors.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != p) {
            return Err(Error::InvalidData(format!(
                "row {i} has {} entries, expected {p}",
                r.len()
            )));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let values =
            Array2::from_shape_vec((n, p), flat).map_err(|e| Error::InvalidData(e.to_string()))?;
        Self::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    pub fn view(&self) -> ArrayView2<'_, f64> {
        self.values.view()
    }

    pub fn into_inner(self) -> Array2<f64> {
        self.values
    }

    /// The submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidData("column selection is empty".into()));
        }
        if let Some(&j) = columns.iter().find(|&&j| j >= self.p()) {
            return Err(Error::InvalidData(format!("column {j} out of range")));
        }
        Ok(DataMatrix {
            values: self.values.select(Axis(1), columns),
        })
    }

    /// Rows multiplied by `signs` (entry `i` scales row `i`).
    pub(crate) fn scaled_rows(&self, signs: &[f64]) -> Array2<f64> {
        let mut out = self.values.clone();
        for (mut row, &s) in out.axis_iter_mut(Axis(0)).zip(signs) {
            if s != 1.0 {
                row.mapv_inplace(|v| v * s);
            }
        }
        out
    }
}

/// Means, covariance (divisor `n`) and variances computed from one data matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMoments {
    pub mu_hat: Array1<f64>,
    pub sigma_hat: Array2<f64>,
    pub sigma_diag: Array1<f64>,
    pub n: usize,
}

/// Computes `mu = X' iota / n` and `Sigma = X'(I - P_iota) X / n`.
pub fn sample_moments(x: &DataMatrix) -> SampleMoments {
    let v = x.view();
    let n = x.n();
    let nf = n as f64;
    let mu_hat = v.sum_axis(Axis(0)) / nf;
    let centered = &v - &mu_hat.view().insert_axis(Axis(0));
    let mut sigma_hat = centered.t().dot(&centered) / nf;
    let p = x.p();
    for i in 0..p {
        for j in (i + 1)..p {
            let avg = 0.5 * (sigma_hat[[i, j]] + sigma_hat[[j, i]]);
            sigma_hat[[i, j]] = avg;
            sigma_hat[[j, i]] = avg;
        }
    }
    let sigma_diag = sigma_hat.diag().to_owned();
    SampleMoments {
        mu_hat,
        sigma_hat,
        sigma_diag,
        n,
    }
}

/// Studentized means `sqrt(n) mu_j / sigma_j`.
///
/// A zero variance maps to `+inf`, `-inf` or `0` following the sign of the mean.
pub fn t_values(m: &SampleMoments) -> Array1<f64> {
    let sqrt_n = (m.n as f64).sqrt();
    m.mu_hat
        .iter()
        .zip(m.sigma_diag.iter())
        .map(|(&mu, &var)| studentize(mu, var, sqrt_n))
        .collect()
}

pub(crate) fn studentize(mu: f64, var: f64, sqrt_n: f64) -> f64 {
    if var > 0.0 {
        sqrt_n * mu / var.sqrt()
    } else if mu > 0.0 {
        f64::INFINITY
    } else if mu < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    }
}

/// `lambda' Sigma lambda`, with tiny negative rounding clamped to zero.
pub fn quadratic_form(m: &SampleMoments, lambda: ArrayView1<'_, f64>) -> f64 {
    let q = lambda.dot(&m.sigma_hat.dot(&lambda));
    let norm2 = lambda.dot(&lambda);
    if q < 0.0 && q > -1e-12 * norm2 {
        0.0
    } else {
        q
    }
}
