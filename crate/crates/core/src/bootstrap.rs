//! Empirical-bootstrap critical values for max-type statistics and the
//! bootstrap-based inequality selection cutoff.
//!
//! For resample `b` with multiplicities `w_b`, the bootstrap statistic is
//! `W_b = max_k sqrt(n) (mu*_b - mu)'l_k / sqrt(l_k' Sigma l_k)`, studentized by
//! the original-sample covariance. Writing `v_b = w_b - 1` gives
//! `sqrt(n) (mu*_b - mu)'l = v_b' X l / sqrt(n)`, so all resamples are one GEMM.

use ndarray::{concatenate, Array2, ArrayView2, Axis};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{studentize, DataMatrix};
use crate::randomization::TestOutcome;
use crate::rng::rng_from_seed;
use crate::statistics::{
    evaluate, DirectionSet, Evaluator, Reflected, StatTag, StatisticSpec, VAR_EPS,
};

/// Bootstrap settings; defaults are 1000 resamples, `alpha = 0.05`, `beta = 0.001`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            resamples: 1000,
            alpha: 0.05,
            beta: 0.001,
            seed: 0,
        }
    }
}

impl BootstrapConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resamples == 0 {
            return Err(Error::InvalidParameter(
                "bootstrap needs at least one resample".into(),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !(self.beta >= 0.0 && self.beta < self.alpha / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in [0, alpha/2), got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// Centered resampling multiplicities `w_bi - 1`, one row per resample.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapWeights {
    centered: Array2<f64>,
}

impl BootstrapWeights {
    /// Draws `resamples` rows of `n` indices with replacement.
    pub fn draw(n: usize, resamples: usize, seed: u64) -> Result<Self> {
        if n == 0 || resamples == 0 {
            return Err(Error::InvalidParameter(
                "bootstrap needs n > 0 and B > 0".into(),
            ));
        }
        let mut rng = rng_from_seed(seed);
        let mut centered = Array2::from_elem((resamples, n), -1.0);
        for mut row in centered.rows_mut() {
            for _ in 0..n {
                row[rng.random_range(0..n)] += 1.0;
            }
        }
        Ok(BootstrapWeights { centered })
    }

    pub fn resamples(&self) -> usize {
        self.centered.nrows()
    }

    pub fn n(&self) -> usize {
        self.centered.ncols()
    }

    /// Folds `max_k (V Z)_{bk} * scale_k` into `running[b]`.
    fn fold_max(&self, z: ArrayView2<'_, f64>, scale: &[f64], running: &mut [f64]) {
        let prod = self.centered.dot(&z);
        for (row, r) in prod.rows().into_iter().zip(running.iter_mut()) {
            for (&v, &sc) in row.iter().zip(scale) {
                let w = v * sc;
                if w > *r {
                    *r = w;
                }
            }
        }
    }
}

/// 1-based order statistic `ceil((1 - level) B)`, clamped to `[1, B]`.
fn quantile_rank(level: f64, b: usize) -> usize {
    let k = ((1.0 - level) * b as f64 - 1e-9).ceil();
    (k.max(1.0) as usize).min(b)
}

fn order_statistic(values: &[f64], rank: usize) -> f64 {
    let mut v = values.to_vec();
    let (_, x, _) = v.select_nth_unstable_by(rank - 1, |a, b| a.total_cmp(b));
    *x
}

/// Projected data `Z = X L` for the direction set, with `1/sqrt(n l'Sigma l)`
/// scales; degenerate directions are dropped.
fn projected(x: &DataMatrix, set: &DirectionSet) -> Result<(Array2<f64>, Vec<f64>)> {
    let v = x.view();
    let p = x.p();
    let (z, l1): (Array2<f64>, Vec<f64>) = match set {
        DirectionSet::Coordinates => (v.to_owned(), vec![1.0; p]),
        DirectionSet::CoordinatesAndOnes => {
            let ones = v.sum_axis(Axis(1)).insert_axis(Axis(1));
            let mut l1 = vec![1.0; p];
            l1.push(p as f64);
            (concatenate![Axis(1), v, ones], l1)
        }
        DirectionSet::Custom(dirs) => {
            StatisticSpec::Finite(set.clone()).validate(p)?;
            let lam = Array2::from_shape_fn((p, dirs.len()), |(j, k)| dirs[k][j]);
            (v.dot(&lam), dirs.iter().map(|d| d.iter().sum()).collect())
        }
    };
    let nf = x.n() as f64;
    let sqrt_n = nf.sqrt();
    let means = z.mean_axis(Axis(0)).expect("n > 0");
    let mut keep = Vec::new();
    let mut scale = Vec::new();
    for (k, col) in z.columns().into_iter().enumerate() {
        let var = col.iter().map(|&c| (c - means[k]).powi(2)).sum::<f64>() / nf;
        if var > VAR_EPS * l1[k] * l1[k] {
            keep.push(k);
            scale.push(1.0 / (sqrt_n * var.sqrt()));
        }
    }
    Ok((z.select(Axis(1), &keep), scale))
}

/// All `B` bootstrap maxima `W_b`. With no usable direction every `W_b` is zero.
pub fn bootstrap_maxima(
    x: &DataMatrix,
    set: &DirectionSet,
    weights: &BootstrapWeights,
) -> Result<Vec<f64>> {
    if weights.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            got: weights.n(),
        });
    }
    let (z, scale) = projected(x, set)?;
    if scale.is_empty() {
        return Ok(vec![0.0; weights.resamples()]);
    }
    let mut running = vec![f64::NEG_INFINITY; weights.resamples()];
    weights.fold_max(z.view(), &scale, &mut running);
    Ok(running)
}

/// The bootstrap `(1 - level)` quantile of `W_b`, taken as order statistic
/// `ceil((1 - level) B)`.
pub fn eb_critical_value(
    x: &DataMatrix,
    set: &DirectionSet,
    level: f64,
    resamples: usize,
    seed: u64,
) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "level must lie in (0, 1), got {level}"
        )));
    }
    let weights = BootstrapWeights::draw(x.n(), resamples, seed)?;
    let w = bootstrap_maxima(x, set, &weights)?;
    Ok(order_statistic(&w, quantile_rank(level, resamples)))
}

/// Selection cutoff `c = -2 c_beta` with `c_beta` the coordinate-wise bootstrap critical value.
pub fn eb_selection_cutoff(x: &DataMatrix, beta: f64, resamples: usize, seed: u64) -> Result<f64> {
    Ok(-2.0 * eb_critical_value(x, &DirectionSet::Coordinates, beta, resamples, seed)?)
}

/// Bootstrap test: reject when `T(X)` exceeds the bootstrap critical value.
pub fn eb_test(x: &DataMatrix, set: &DirectionSet, cfg: &BootstrapConfig) -> Result<TestOutcome> {
    cfg.validate()?;
    eb_test_at(x, set, cfg, cfg.alpha)
}

fn eb_test_at(
    x: &DataMatrix,
    set: &DirectionSet,
    cfg: &BootstrapConfig,
    level: f64,
) -> Result<TestOutcome> {
    let statistic = evaluate(x, &StatisticSpec::Finite(set.clone()))?;
    let weights = BootstrapWeights::draw(x.n(), cfg.resamples, cfg.seed)?;
    let w = bootstrap_maxima(x, set, &weights)?;
    let cv = order_statistic(&w, quantile_rank(level, cfg.resamples));
    let exceed = w.iter().filter(|&&wb| wb >= statistic.value).count();
    let reject = statistic.tag != StatTag::Zero && statistic.value > cv;
    Ok(TestOutcome {
        n_infinite_reflections: 0,
        p_value: (exceed + 1) as f64 / (cfg.resamples + 1) as f64,
        p_count: exceed + 1,
        p_denominator: cfg.resamples + 1,
        reject,
        alpha: cfg.alpha,
        m: cfg.resamples,
        statistic,
        selected: None,
        cutoff: None,
        critical_value: Some(cv),
    })
}

fn restrict(set: &DirectionSet, columns: &[usize]) -> Option<DirectionSet> {
    match set {
        DirectionSet::Coordinates | DirectionSet::CoordinatesAndOnes => Some(set.clone()),
        DirectionSet::Custom(dirs) => {
            let sub: Vec<Vec<f64>> = dirs
                .iter()
                .map(|d| columns.iter().map(|&j| d[j]).collect::<Vec<f64>>())
                .filter(|d| d.iter().any(|&v| v > 0.0))
                .collect();
            (!sub.is_empty()).then_some(DirectionSet::Custom(sub))
        }
    }
}

/// Two-step bootstrap test: drop inequalities with `t_j <= -2 c_beta`, then test
/// the rest at level `alpha - 2 beta`. With `beta = 0` nothing is dropped.
pub fn eb_test_selected(
    x: &DataMatrix,
    set: &DirectionSet,
    cfg: &BootstrapConfig,
) -> Result<TestOutcome> {
    cfg.validate()?;
    if cfg.beta == 0.0 {
        let mut out = eb_test_at(x, set, cfg, cfg.alpha)?;
        out.selected = Some((0..x.p()).collect());
        out.cutoff = Some(f64::NEG_INFINITY);
        return Ok(out);
    }
    let cutoff = eb_selection_cutoff(x, cfg.beta, cfg.resamples, cfg.seed)?;
    let ev = Evaluator::new(x, &StatisticSpec::t_max())?;
    let ones = vec![1.0; x.n()];
    let t = ev.t_values(&ev.reflect(&ones).view());
    let columns: Vec<usize> = (0..x.p()).filter(|&j| t[j] > cutoff).collect();
    let sub_set = if columns.is_empty() {
        None
    } else {
        restrict(set, &columns)
    };
    let Some(sub_set) = sub_set else {
        return Ok(TestOutcome {
            statistic: crate::statistics::StatValue::zero(),
            p_value: 1.0,
            p_count: cfg.resamples + 1,
            p_denominator: cfg.resamples + 1,
            reject: false,
            alpha: cfg.alpha,
            m: cfg.resamples,
            n_infinite_reflections: 0,
            selected: Some(columns),
            cutoff: Some(cutoff),
            critical_value: None,
        });
    };
    let sub = x.select_columns(&columns)?;
    let mut out = eb_test_at(&sub, &sub_set, cfg, cfg.alpha - 2.0 * cfg.beta)?;
    out.selected = Some(columns);
    out.cutoff = Some(cutoff);
    Ok(out)
}

/// Column selection produced by [`EbSelector`].
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub columns: Vec<usize>,
    /// The cutoff, when it was computed exactly.
    pub cutoff: Option<f64>,
}

/// Bootstrap selection `J(RX) = {j : t_j(RX) > -2 c_beta(RX)}` evaluated on
/// reflected data, reusing one set of resampling weights for every reflection.
#[derive(Debug, Clone)]
pub struct EbSelector {
    weights: BootstrapWeights,
    beta: f64,
    rank: usize,
}

/// Column-block schedule for the incremental bound on `c_beta`.
const BLOCKS: [usize; 2] = [8, 32];

impl EbSelector {
    pub fn new(weights: BootstrapWeights, beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in [0, 1), got {beta}"
            )));
        }
        let rank = quantile_rank(beta, weights.resamples());
        Ok(EbSelector {
            weights,
            beta,
            rank,
        })
    }

    /// Selects columns of `RX`.
    ///
    /// Running maxima over a growing set of columns bound `c_beta` from below, so
    /// once every `t_j` clears `-2` times that bound the selection is already
    /// known to be all columns. `exact` forces the full computation, which also
    /// reports the cutoff.
    pub fn select(&self, ev: &Evaluator<'_>, r: &Reflected<'_>, exact: bool) -> Selection {
        let x = ev.data();
        let p = x.p();
        let sqrt_n = (x.n() as f64).sqrt();
        let (means, vars) = ev.coordinate_moments(r);
        let t: Vec<f64> = means
            .iter()
            .zip(&vars)
            .map(|(&m, &v)| studentize(m, if v <= VAR_EPS { 0.0 } else { v }, sqrt_n))
            .collect();
        if self.beta == 0.0 {
            return Selection {
                columns: (0..p).collect(),
                cutoff: Some(f64::NEG_INFINITY),
            };
        }
        let usable: Vec<usize> = (0..p).filter(|&j| vars[j] > VAR_EPS).collect();
        let mut running = vec![f64::NEG_INFINITY; self.weights.resamples()];
        let t_min = t.iter().copied().fold(f64::INFINITY, f64::min);

        let mut done = 0;
        let mut schedule: Vec<usize> = if exact { vec![] } else { BLOCKS.to_vec() };
        schedule.push(usable.len());
        for width in schedule {
            let end = (done + width).min(usable.len());
            if end > done {
                let cols = &usable[done..end];
                let mut z = x.view().select(Axis(1), cols);
                for (mut row, &s) in z.rows_mut().into_iter().zip(r.signs) {
                    if s < 0.0 {
                        row.mapv_inplace(|v| -v);
                    }
                }
                let scale: Vec<f64> = cols
                    .iter()
                    .map(|&j| 1.0 / (sqrt_n * vars[j].sqrt()))
                    .collect();
                self.weights.fold_max(z.view(), &scale, &mut running);
                done = end;
            }
            if done == usable.len() {
                break;
            }
            let lower = order_statistic(&running, self.rank);
            if t_min > -2.0 * lower {
                return Selection {
                    columns: (0..p).collect(),
                    cutoff: None,
                };
            }
        }
        let c_beta = if usable.is_empty() {
            0.0
        } else {
            order_statistic(&running, self.rank)
        };
        let cutoff = -2.0 * c_beta;
        Selection {
            columns: (0..p).filter(|&j| t[j] > cutoff).collect(),
            cutoff: Some(cutoff),
        }
    }
}
