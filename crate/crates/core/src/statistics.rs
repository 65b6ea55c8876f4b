//! The `T_U` statistic family: maximal studentized non-negative combinations of
//! sample means over a direction set `U`.
//!
//! Values live on the extended half-line: `Zero` when every mean is
//! non-positive, `Infinite` when a direction with positive mean has zero
//! sample variance, `Finite` otherwise.

use ndarray::{Array1, Array2, ArrayView1, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{quadratic_form, studentize, DataMatrix, SampleMoments};
use crate::nnls::nnls_gram;

/// Relative threshold for declaring `lambda' Sigma lambda = 0`; scaled by `|lambda|_1^2`.
pub const VAR_EPS: f64 = 1e-12;

/// A finite set of non-negative directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DirectionSet {
    /// `{e_1, ..., e_p}`, giving the maximum t-value.
    Coordinates,
    /// `{e_1, ..., e_p, iota_p}`.
    CoordinatesAndOnes,
    /// User-supplied directions, each non-negative and nonzero.
    Custom(Vec<Vec<f64>>),
}

/// Which `T_U` to compute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StatisticSpec {
    Finite(DirectionSet),
    /// `U` is the whole non-negative orthant (`T_+`).
    NonNegativeOrthant,
}

impl StatisticSpec {
    pub fn t_max() -> Self {
        StatisticSpec::Finite(DirectionSet::Coordinates)
    }

    pub fn t_max_iota() -> Self {
        StatisticSpec::Finite(DirectionSet::CoordinatesAndOnes)
    }

    pub fn t_plus() -> Self {
        StatisticSpec::NonNegativeOrthant
    }

    /// Checks the directions of a custom set against dimension `p`.
    pub fn validate(&self, p: usize) -> Result<()> {
        if let StatisticSpec::Finite(DirectionSet::Custom(dirs)) = self {
            validate_directions(dirs, p)?;
        }
        Ok(())
    }
}

fn validate_directions(dirs: &[Vec<f64>], p: usize) -> Result<()> {
    if dirs.is_empty() {
        return Err(Error::EmptyDirectionSet);
    }
    for (index, d) in dirs.iter().enumerate() {
        let bad = |reason: &str| Error::InvalidDirection {
            index,
            reason: reason.to_string(),
        };
        if d.len() != p {
            return Err(bad(&format!("length {} does not match p = {p}", d.len())));
        }
        if d.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(bad("entries must be finite and non-negative"));
        }
        if d.iter().all(|&v| v == 0.0) {
            return Err(bad("direction is zero"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatTag {
    Zero,
    Finite,
    Infinite,
}

/// An extended-real statistic value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatValue {
    pub tag: StatTag,
    /// `0` for `Zero`, `+inf` for `Infinite`.
    pub value: f64,
    pub maximizer: Option<Vec<f64>>,
    /// Set when the existence condition fails (the `Infinite` case).
    pub condition_violated: bool,
}

impl StatValue {
    pub fn zero() -> Self {
        StatValue {
            tag: StatTag::Zero,
            value: 0.0,
            maximizer: None,
            condition_violated: false,
        }
    }

    fn infinite(direction: Vec<f64>) -> Self {
        StatValue {
            tag: StatTag::Infinite,
            value: f64::INFINITY,
            maximizer: Some(direction),
            condition_violated: true,
        }
    }

    fn finite(value: f64, maximizer: Vec<f64>) -> Self {
        StatValue {
            tag: StatTag::Finite,
            value,
            maximizer: Some(maximizer),
            condition_violated: false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.tag == StatTag::Infinite
    }

    /// Extended-real `>=`, under which `inf >= inf` and `0 >= 0` hold.
    pub fn ge(&self, other: &StatValue) -> bool {
        self.value >= other.value
    }
}

fn unit(p: usize, j: usize) -> Vec<f64> {
    let mut e = vec![0.0; p];
    e[j] = 1.0;
    e
}

fn materialize(set: &DirectionSet, p: usize) -> Vec<Vec<f64>> {
    match set {
        DirectionSet::Coordinates => (0..p).map(|j| unit(p, j)).collect(),
        DirectionSet::CoordinatesAndOnes => {
            let mut dirs: Vec<Vec<f64>> = (0..p).map(|j| unit(p, j)).collect();
            dirs.push(vec![1.0; p]);
            dirs
        }
        DirectionSet::Custom(dirs) => dirs.clone(),
    }
}

/// Scans `(mean, variance, |lambda|_1^2)` triples in order and applies the
/// extended-real conventions. `direction(k)` materializes the `k`-th direction.
fn scan_directions(
    sqrt_n: f64,
    candidates: impl Iterator<Item = (usize, f64, f64, f64)>,
    direction: impl Fn(usize) -> Vec<f64>,
) -> StatValue {
    let mut best: Option<(usize, f64)> = None;
    for (k, mean, var, l1sq) in candidates {
        if mean <= 0.0 {
            continue;
        }
        if var <= VAR_EPS * l1sq {
            return StatValue::infinite(direction(k));
        }
        let t = sqrt_n * mean / var.sqrt();
        if best.is_none_or(|(_, b)| t > b) {
            best = Some((k, t));
        }
    }
    match best {
        Some((k, t)) => StatValue::finite(t, direction(k)),
        None => StatValue::zero(),
    }
}

/// `T_U` for a finite direction set, evaluated from sample moments.
pub fn evaluate_finite(m: &SampleMoments, set: &DirectionSet) -> Result<StatValue> {
    let p = m.mu_hat.len();
    if let DirectionSet::Custom(dirs) = set {
        validate_directions(dirs, p)?;
    }
    if m.mu_hat.iter().all(|&v| v <= 0.0) {
        return Ok(StatValue::zero());
    }
    let dirs = materialize(set, p);
    let sqrt_n = (m.n as f64).sqrt();
    let stats = dirs.iter().enumerate().map(|(k, d)| {
        let lam = ArrayView1::from(d.as_slice());
        let l1: f64 = d.iter().sum();
        (k, m.mu_hat.dot(&lam), quadratic_form(m, lam), l1 * l1)
    });
    Ok(scan_directions(sqrt_n, stats, |k| dirs[k].clone()))
}

/// `T_+`, the statistic over the whole non-negative orthant, computed by NNLS.
pub fn evaluate_t_plus(x: &DataMatrix) -> Result<StatValue> {
    evaluate(x, &StatisticSpec::NonNegativeOrthant)
}

/// Evaluates any supported statistic on `x`.
pub fn evaluate(x: &DataMatrix, spec: &StatisticSpec) -> Result<StatValue> {
    let ev = Evaluator::new(x, spec)?;
    let signs = vec![1.0; x.n()];
    let r = ev.reflect(&signs);
    ev.evaluate(&r.view(), None)
}

/// `T / sqrt(1 + T^2 / n)`; maps `inf` to `sqrt(n)`.
pub fn t_star_transform(t: f64, n: usize) -> f64 {
    let nf = n as f64;
    if t.is_infinite() {
        nf.sqrt()
    } else {
        t / (1.0 + t * t / nf).sqrt()
    }
}

/// Outcome of the sufficient copositivity screen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CopositivityCheck {
    /// Every covariance entry is strictly positive.
    Positive,
    /// Removing these indices leaves a strictly positive principal submatrix.
    SubmatrixPositive(Vec<usize>),
    Unknown,
}

/// Greedy screen for a large strictly positive principal submatrix of `Sigma`.
///
/// Diagnostic only. Indices with the most non-positive entries are removed one at
/// a time; the result is reported when the remaining block has at least two
/// indices and outnumbers the removed ones.
pub fn check_copositivity_sufficient(m: &SampleMoments) -> CopositivityCheck {
    let s = &m.sigma_hat;
    let p = s.nrows();
    if s.iter().all(|&v| v > 0.0) {
        return CopositivityCheck::Positive;
    }
    let mut alive = vec![true; p];
    let mut removed = Vec::new();
    loop {
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in (0..p).filter(|&i| alive[i]) {
            let (count, mass) = (0..p)
                .filter(|&j| alive[j] && s[[i, j]] <= 0.0)
                .fold((0usize, 0.0), |(c, m), j| (c + 1, m + s[[i, j]]));
            if count == 0 {
                continue;
            }
            let better = match worst {
                None => true,
                Some((_, wc, wm)) => count > wc || (count == wc && mass <= wm),
            };
            if better {
                worst = Some((i, count, mass));
            }
        }
        match worst {
            None => break,
            Some((i, _, _)) => {
                alive[i] = false;
                removed.push(i);
            }
        }
    }
    let remaining = p - removed.len();
    if remaining >= 2 && remaining > removed.len() {
        removed.sort_unstable();
        CopositivityCheck::SubmatrixPositive(removed)
    } else {
        CopositivityCheck::Unknown
    }
}

/// Sample moments of a reflected data set `RX`: column sums `X's` and signs.
#[derive(Debug, Clone)]
pub struct Reflected<'a> {
    pub signs: &'a [f64],
    /// `(RX)' iota = X' s`.
    pub sums: ArrayView1<'a, f64>,
}

/// Evaluates a statistic on sign-flipped copies `RX` of a fixed data set.
///
/// `(RX)'(RX) = X'X` for every reflection, so squared column norms and the Gram
/// matrix are computed once; each reflection then only needs `X's`.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    x: &'a DataMatrix,
    spec: StatisticSpec,
    sqrt_n: f64,
    col_sq: Array1<f64>,
    extra: Vec<Direction>,
    coordinates: bool,
    gram: Option<Array2<f64>>,
}

#[derive(Debug, Clone)]
struct Direction {
    weights: Vec<f64>,
    sq_norm: f64,
    l1sq: f64,
}

impl Direction {
    fn new(x: &DataMatrix, weights: Vec<f64>) -> Self {
        let xl = x.view().dot(&ArrayView1::from(weights.as_slice()));
        let l1: f64 = weights.iter().sum();
        Direction {
            sq_norm: xl.dot(&xl),
            l1sq: l1 * l1,
            weights,
        }
    }

    fn restricted(&self, x: &DataMatrix, keep: &[bool]) -> Option<Self> {
        let w: Vec<f64> = self
            .weights
            .iter()
            .zip(keep)
            .map(|(&v, &k)| if k { v } else { 0.0 })
            .collect();
        w.iter().any(|&v| v > 0.0).then(|| Direction::new(x, w))
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(x: &'a DataMatrix, spec: &StatisticSpec) -> Result<Self> {
        spec.validate(x.p())?;
        let v = x.view();
        let col_sq = v.map_axis(Axis(0), |c| c.dot(&c));
        let (coordinates, extra, gram) = match spec {
            StatisticSpec::Finite(DirectionSet::Coordinates) => (true, vec![], None),
            StatisticSpec::Finite(DirectionSet::CoordinatesAndOnes) => {
                (true, vec![Direction::new(x, vec![1.0; x.p()])], None)
            }
            StatisticSpec::Finite(DirectionSet::Custom(dirs)) => (
                false,
                dirs.iter().map(|d| Direction::new(x, d.clone())).collect(),
                None,
            ),
            StatisticSpec::NonNegativeOrthant => (false, vec![], Some(v.t().dot(&v))),
        };
        Ok(Evaluator {
            x,
            spec: spec.clone(),
            sqrt_n: (x.n() as f64).sqrt(),
            col_sq,
            extra,
            coordinates,
            gram,
        })
    }

    pub fn data(&self) -> &DataMatrix {
        self.x
    }

    pub fn spec(&self) -> &StatisticSpec {
        &self.spec
    }

    /// Column sums `X's` for a batch of sign vectors (rows of `signs`).
    pub fn reflected_sums(&self, signs: &Array2<f64>) -> Array2<f64> {
        signs.dot(&self.x.view())
    }

    /// Moments of a single reflection.
    pub fn reflect<'s>(&self, signs: &'s [f64]) -> OwnedReflection<'s> {
        let s = ArrayView1::from(signs);
        OwnedReflection {
            signs,
            sums: self.x.view().t().dot(&s),
        }
    }

    /// Per-coordinate means and variances of `RX`.
    pub fn coordinate_moments(&self, r: &Reflected<'_>) -> (Vec<f64>, Vec<f64>) {
        let nf = self.x.n() as f64;
        r.sums
            .iter()
            .zip(self.col_sq.iter())
            .map(|(&s, &cs)| {
                let mean = s / nf;
                (mean, (cs / nf - mean * mean).max(0.0))
            })
            .unzip()
    }

    /// t-values of `RX`, with variances at or below the zero threshold treated as zero.
    pub fn t_values(&self, r: &Reflected<'_>) -> Vec<f64> {
        let (means, vars) = self.coordinate_moments(r);
        means
            .iter()
            .zip(&vars)
            .map(|(&m, &v)| studentize(m, if v <= VAR_EPS { 0.0 } else { v }, self.sqrt_n))
            .collect()
    }

    /// `T(RX_J)` where `J = columns` (all columns when `None`).
    pub fn evaluate(&self, r: &Reflected<'_>, columns: Option<&[usize]>) -> Result<StatValue> {
        let p = self.x.p();
        let keep: Option<Vec<bool>> = columns.map(|cols| {
            let mut k = vec![false; p];
            cols.iter().for_each(|&j| k[j] = true);
            k
        });
        let in_j = |j: usize| keep.as_ref().is_none_or(|k| k[j]);
        if (0..p).filter(|&j| in_j(j)).all(|j| r.sums[j] <= 0.0) {
            return Ok(StatValue::zero());
        }
        match &self.gram {
            Some(gram) => self.evaluate_orthant(gram, r, keep.as_deref()),
            None => Ok(self.evaluate_finite(r, keep.as_deref())),
        }
    }

    fn evaluate_finite(&self, r: &Reflected<'_>, keep: Option<&[bool]>) -> StatValue {
        let p = self.x.p();
        let nf = self.x.n() as f64;
        let in_j = |j: usize| keep.is_none_or(|k| k[j]);
        let restricted: Vec<Direction>;
        let extra = match keep {
            None => &self.extra,
            Some(k) => {
                restricted = self
                    .extra
                    .iter()
                    .filter_map(|d| d.restricted(self.x, k))
                    .collect();
                &restricted
            }
        };
        let n_coord = if self.coordinates { p } else { 0 };
        let coords = (0..n_coord).filter(|&j| in_j(j)).map(|j| {
            let mean = r.sums[j] / nf;
            (j, mean, self.col_sq[j] / nf - mean * mean, 1.0)
        });
        let others = extra.iter().enumerate().map(|(k, d)| {
            let mean = r.sums.dot(&ArrayView1::from(d.weights.as_slice())) / nf;
            (n_coord + k, mean, d.sq_norm / nf - mean * mean, d.l1sq)
        });
        scan_directions(self.sqrt_n, coords.chain(others), |k| {
            if k < n_coord {
                unit(p, k)
            } else {
                extra[k - n_coord].weights.clone()
            }
        })
    }

    fn evaluate_orthant(
        &self,
        gram: &Array2<f64>,
        r: &Reflected<'_>,
        keep: Option<&[bool]>,
    ) -> Result<StatValue> {
        let n = self.x.n();
        let nf = n as f64;
        let sol = nnls_gram(gram.view(), r.sums, keep)?;
        if sol.support.is_empty() {
            return Ok(StatValue::zero());
        }
        let lambda = sol.lambda;
        // q = |(I - P)(RX) lambda|^2 / n, computed on the centered reflected fit.
        let v = self.x.view();
        let mut fit = vec![0.0; n];
        for &k in &sol.support {
            let lk = lambda[k];
            for (f, &xv) in fit.iter_mut().zip(v.column(k).iter()) {
                *f += lk * xv;
            }
        }
        fit.iter_mut().zip(r.signs).for_each(|(f, &s)| *f *= s);
        let mean_fit = fit.iter().sum::<f64>() / nf;
        let q = fit.iter().map(|f| (f - mean_fit).powi(2)).sum::<f64>() / nf;
        let d = sol
            .support
            .iter()
            .map(|&k| r.sums[k] * lambda[k])
            .sum::<f64>()
            / nf;
        let l1: f64 = lambda.iter().sum();
        if q <= VAR_EPS * l1 * l1 {
            return Ok(StatValue::infinite(lambda));
        }
        if d <= 0.0 {
            return Err(Error::NnlsOptimalityViolated(d));
        }
        Ok(StatValue::finite(self.sqrt_n * d / q.sqrt(), lambda))
    }
}

/// A reflection with owned column sums.
#[derive(Debug, Clone)]
pub struct OwnedReflection<'s> {
    pub signs: &'s [f64],
    pub sums: Array1<f64>,
}

impl OwnedReflection<'_> {
    pub fn view(&self) -> Reflected<'_> {
        Reflected {
            signs: self.signs,
            sums: self.sums.view(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{sample_moments, t_values};
    use ndarray::array;

    fn data(rows: &[Vec<f64>]) -> DataMatrix {
        DataMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn coordinates_reproduce_t_max() {
        let x = data(&[
            vec![1.0, -0.5, 2.0],
            vec![0.3, 0.1, -1.0],
            vec![2.2, -0.4, 0.5],
        ]);
        let m = sample_moments(&x);
        let v = evaluate_finite(&m, &DirectionSet::Coordinates).unwrap();
        let t = t_values(&m);
        let tmax = t
            .iter()
            .zip(m.mu_hat.iter())
            .filter(|(_, &mu)| mu > 0.0)
            .map(|(t, _)| *t);
        assert!((v.value - tmax.fold(f64::MIN, f64::max)).abs() < 1e-12);
        assert_eq!(v.tag, StatTag::Finite);
    }

    #[test]
    fn non_positive_means_give_zero() {
        let x = data(&[vec![-1.0, -2.0], vec![-1.5, -2.5], vec![-0.5, -1.5]]);
        let m = sample_moments(&x);
        assert_eq!(
            evaluate_finite(&m, &DirectionSet::CoordinatesAndOnes).unwrap(),
            StatValue::zero()
        );
        assert_eq!(evaluate_t_plus(&x).unwrap(), StatValue::zero());
    }

    #[test]
    fn empty_direction_set_is_an_error() {
        let x = data(&[vec![1.0], vec![2.0]]);
        let err = evaluate_finite(&sample_moments(&x), &DirectionSet::Custom(vec![])).unwrap_err();
        assert_eq!(err, Error::EmptyDirectionSet);
    }

    #[test]
    fn zero_variance_with_positive_mean_is_infinite() {
        let x = data(&[vec![1.0, 0.5], vec![1.0, -0.2]]);
        let v = evaluate_finite(&sample_moments(&x), &DirectionSet::Coordinates).unwrap();
        assert_eq!(v.tag, StatTag::Infinite);
        assert_eq!(v.maximizer, Some(vec![1.0, 0.0]));
    }

    #[test]
    fn single_column_t_plus_equals_t_value() {
        let x = data(&[vec![1.0], vec![3.0]]);
        let v = evaluate_t_plus(&x).unwrap();
        assert!((v.value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_fit_of_iota_is_infinite() {
        // iota = 0.5 * (col0 + col1) with both columns non-constant.
        let x = data(&[vec![1.0, 1.0], vec![2.0, 0.0], vec![0.0, 2.0]]);
        let v = evaluate_t_plus(&x).unwrap();
        assert_eq!(v.tag, StatTag::Infinite);
        assert!(v.condition_violated);
    }

    #[test]
    fn evaluator_agrees_with_moment_path() {
        let x = data(&[
            vec![0.3, 1.2, -0.7],
            vec![1.1, -0.2, 0.4],
            vec![-0.5, 0.9, 1.5],
            vec![0.8, 0.1, 0.2],
        ]);
        let m = sample_moments(&x);
        for set in [DirectionSet::Coordinates, DirectionSet::CoordinatesAndOnes] {
            let a = evaluate_finite(&m, &set).unwrap();
            let b = evaluate(&x, &StatisticSpec::Finite(set)).unwrap();
            assert!((a.value - b.value).abs() < 1e-10 * a.value.abs().max(1.0));
        }
    }

    #[test]
    fn t_star_examples() {
        assert_eq!(t_star_transform(0.0, 9), 0.0);
        assert_eq!(t_star_transform(f64::INFINITY, 4), 2.0);
        let n = 7;
        let root = (n as f64).sqrt();
        assert!((t_star_transform(root, n) - (n as f64 / 2.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn copositivity_screen() {
        let pos = SampleMoments {
            mu_hat: array![0.0, 0.0],
            sigma_hat: array![[1.0, 0.2], [0.2, 1.0]],
            sigma_diag: array![1.0, 1.0],
            n: 2,
        };
        assert_eq!(
            check_copositivity_sufficient(&pos),
            CopositivityCheck::Positive
        );

        let ident = SampleMoments {
            sigma_hat: Array2::eye(3),
            sigma_diag: array![1.0, 1.0, 1.0],
            mu_hat: array![0.0, 0.0, 0.0],
            n: 3,
        };
        assert_eq!(
            check_copositivity_sufficient(&ident),
            CopositivityCheck::Unknown
        );

        // Index 2 carries the only negative entries.
        let s = array![[1.0, 0.3, -0.2], [0.3, 1.0, -0.1], [-0.2, -0.1, 1.0]];
        let m = SampleMoments {
            sigma_diag: s.diag().to_owned(),
            sigma_hat: s,
            mu_hat: array![0.0, 0.0, 0.0],
            n: 3,
        };
        assert_eq!(
            check_copositivity_sufficient(&m),
            CopositivityCheck::SubmatrixPositive(vec![2])
        );
    }

    #[test]
    fn restricted_columns() {
        let x = data(&[
            vec![1.0, -3.0, 0.2],
            vec![0.5, -2.0, 0.4],
            vec![0.8, -2.5, -0.1],
        ]);
        let ev = Evaluator::new(&x, &StatisticSpec::t_max_iota()).unwrap();
        let ones = vec![1.0; 3];
        let r = ev.reflect(&ones);
        assert_eq!(
            ev.evaluate(&r.view(), Some(&[1])).unwrap(),
            StatValue::zero()
        );
        let sub = x.select_columns(&[0, 2]).unwrap();
        let direct = evaluate(&sub, &StatisticSpec::t_max_iota()).unwrap();
        let via = ev.evaluate(&r.view(), Some(&[0, 2])).unwrap();
        assert!((direct.value - via.value).abs() < 1e-12);
    }
}
