//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use momineq::DataMatrix;
use nalgebra::{DMatrix, DVector};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize, p: usize, shift: f64) -> Array2<f64> {
    use rand_distr::{Distribution, StandardNormal};
    Array2::from_shape_simple_fn((n, p), || {
        let z: f64 = StandardNormal.sample(rng);
        z + shift
    })
}

pub fn data(x: Array2<f64>) -> DataMatrix {
    DataMatrix::new(x).unwrap()
}

/// Exhaustive NNLS: least squares on every support, keeping feasible solutions.
/// Returns the minimal objective `|b - A l|^2` and its minimizer.
pub fn brute_force_nnls(a: &Array2<f64>, b: &[f64]) -> (f64, Vec<f64>) {
    let (n, p) = a.dim();
    let am = DMatrix::from_fn(n, p, |i, j| a[[i, j]]);
    let bv = DVector::from_column_slice(b);
    let mut best = (bv.norm_squared(), vec![0.0; p]);
    for mask in 1u32..(1 << p) {
        let cols: Vec<usize> = (0..p).filter(|j| mask >> j & 1 == 1).collect();
        let sub = am.select_columns(&cols);
        let svd = sub.clone().svd(true, true);
        let Ok(sol) = svd.solve(&bv, 1e-12) else {
            continue;
        };
        if sol.iter().any(|&v| v < 0.0) {
            continue;
        }
        let obj = (&bv - &sub * &sol).norm_squared();
        if obj < best.0 - 1e-15 {
            let mut lambda = vec![0.0; p];
            cols.iter()
                .zip(sol.iter())
                .for_each(|(&j, &v)| lambda[j] = v);
            best = (obj, lambda);
        }
    }
    best
}

/// Mean vector and covariance with divisor `n`, computed directly.
pub fn moments(x: &Array2<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let (n, p) = x.dim();
    let mean: Vec<f64> = (0..p)
        .map(|j| (0..n).map(|i| x[[i, j]]).sum::<f64>() / n as f64)
        .collect();
    let cov = (0..p)
        .map(|j| {
            (0..p)
                .map(|k| {
                    (0..n)
                        .map(|i| (x[[i, j]] - mean[j]) * (x[[i, k]] - mean[k]))
                        .sum::<f64>()
                        / n as f64
                })
                .collect()
        })
        .collect();
    (mean, cov)
}

/// Maximum of `sqrt(n) mu'l / sqrt(l'Sigma l)` over `points` unit directions in
/// the positive quadrant (two-column data).
pub fn angular_t_plus(x: &Array2<f64>, points: usize) -> f64 {
    let n = x.nrows() as f64;
    let (m, s) = moments(x);
    (0..points)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 * i as f64 / (points - 1) as f64;
            let (c, d) = (t.cos(), t.sin());
            let q = c * c * s[0][0] + 2.0 * c * d * s[0][1] + d * d * s[1][1];
            n.sqrt() * (m[0] * c + m[1] * d) / q.sqrt()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Bootstrap maxima of the coordinate t-statistics computed resample by resample,
/// drawing indices in the same order as the library.
pub fn naive_bootstrap_tmax(x: &Array2<f64>, resamples: usize, seed: u64) -> Vec<f64> {
    let (n, p) = x.dim();
    let (mean, cov) = moments(x);
    let mut r = rng(seed);
    (0..resamples)
        .map(|_| {
            let idx: Vec<usize> = (0..n).map(|_| r.random_range(0..n)).collect();
            (0..p)
                .filter(|&j| cov[j][j] > 1e-12)
                .map(|j| {
                    let m = idx.iter().map(|&i| x[[i, j]]).sum::<f64>() / n as f64;
                    (n as f64).sqrt() * (m - mean[j]) / cov[j][j].sqrt()
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// Order statistic `ceil((1 - level) B)` of `values` (1-based, clamped).
pub fn quantile(values: &[f64], level: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let k = ((1.0 - level) * v.len() as f64 - 1e-9).ceil().max(1.0) as usize;
    v[k.min(v.len()) - 1]
}
