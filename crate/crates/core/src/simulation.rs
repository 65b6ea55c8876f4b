//! Monte Carlo data generation and rejection-rate experiments.
//!
//! Data are generated as `X = 1 mu' + E A` where `E` has i.i.d. unit-variance
//! entries and `A` is the upper Cholesky factor of an AR(1) correlation matrix.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use ndarray::Array2;
use rand::Rng;
use rand_distr::{Distribution, SkewNormal, StudentT};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::bootstrap::{eb_selection_cutoff, eb_test, eb_test_selected, BootstrapConfig};
use crate::error::{Error, Result};
use crate::moments::{sample_moments, t_values, DataMatrix};
use crate::randomization::{
    randomization_test, randomization_test_selected, sample_reflections, CutoffSource,
    ReflectionPlan, SelectionRule, TestOutcome,
};
use crate::rng::{rng_from_seed, substream};
use crate::statistics::{StatTag, StatisticSpec};

/// Largest attainable skewness of the skew-normal family (rounded down).
pub const MAX_SKEWNESS: f64 = 0.9952;

/// Significance level used to select inequalities before bootstrap or randomization tests.
pub const SELECTION_BETA: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Design {
    D1,
    D2,
    D3,
    D4,
}

impl Design {
    pub const ALL: [Design; 4] = [Design::D1, Design::D2, Design::D3, Design::D4];
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            Design::D1 => 1,
            Design::D2 => 2,
            Design::D3 => 3,
            Design::D4 => 4,
        };
        write!(f, "{k}")
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches(['D', 'd']) {
            "1" => Ok(Design::D1),
            "2" => Ok(Design::D2),
            "3" => Ok(Design::D3),
            "4" => Ok(Design::D4),
            _ => Err(Error::InvalidParameter(format!(
                "unknown design {s:?}, expected 1-4"
            ))),
        }
    }
}

/// Distribution of the entries of `E`; both have mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ErrorDist {
    /// Student-t with 4 degrees of freedom divided by `sqrt(2)`.
    StudentT4Scaled,
    /// Skew-normal with the given skewness.
    SkewNormal(f64),
}

impl fmt::Display for ErrorDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorDist::StudentT4Scaled => write!(f, "t4"),
            ErrorDist::SkewNormal(g) => write!(f, "skewnormal:{g}"),
        }
    }
}

impl FromStr for ErrorDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("t4") {
            return Ok(ErrorDist::StudentT4Scaled);
        }
        if let Some(g) = s
            .strip_prefix("skewnormal:")
            .or_else(|| s.strip_prefix("sn:"))
        {
            let gamma: f64 = g
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad skewness in {s:?}")))?;
            return Ok(ErrorDist::SkewNormal(gamma));
        }
        Err(Error::InvalidParameter(format!(
            "unknown error distribution {s:?}, expected t4 or skewnormal:<gamma>"
        )))
    }
}

/// How the SR tests with selection obtain their cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SelectionMode {
    /// Bootstrap cutoff recomputed on every reflected data set (exact).
    #[default]
    PerReflection,
    /// Cutoff computed once from the observed data and held fixed across
    /// reflections. Much faster, but the resulting test is not exact.
    FixedCutoff,
    /// Columns selected once on the observed data and reused for every
    /// reflection. Not exact; its size depends on the design.
    ObservedSet,
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionMode::PerReflection => "per-reflection",
            SelectionMode::FixedCutoff => "fixed-cutoff",
            SelectionMode::ObservedSet => "observed-set",
        })
    }
}

impl FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "per-reflection" => Ok(SelectionMode::PerReflection),
            "fixed-cutoff" => Ok(SelectionMode::FixedCutoff),
            "observed-set" => Ok(SelectionMode::ObservedSet),
            _ => Err(Error::InvalidParameter(format!(
                "unknown selection mode {s:?}, expected per-reflection, fixed-cutoff or observed-set"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignConfig {
    pub n: usize,
    pub p: usize,
    pub rho: f64,
    pub design: Design,
    pub error_dist: ErrorDist,
    pub reps: usize,
    /// Number of reflections.
    pub m: usize,
    /// Number of bootstrap resamples.
    pub b: usize,
    pub alpha: f64,
    pub seed: u64,
    /// Overrides the design's mean vector.
    #[serde(default)]
    pub mu: Option<Vec<f64>>,
    #[serde(default)]
    pub selection: SelectionMode,
}

impl DesignConfig {
    pub fn new(n: usize, p: usize, rho: f64, design: Design) -> Self {
        DesignConfig {
            n,
            p,
            rho,
            design,
            error_dist: ErrorDist::StudentT4Scaled,
            reps: 1000,
            m: 1000,
            b: 1000,
            alpha: 0.05,
            seed: 0,
            mu: None,
            selection: SelectionMode::PerReflection,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.p < 1 {
            return Err(Error::InvalidParameter(format!(
                "need n >= 2 and p >= 1, got n={}, p={}",
                self.n, self.p
            )));
        }
        if !(self.rho > -1.0 && self.rho < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in (-1, 1), got {}",
                self.rho
            )));
        }
        if self.reps == 0 || self.m == 0 || self.b == 0 {
            return Err(Error::InvalidParameter(
                "reps, reflections and resamples must be positive".into(),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if let ErrorDist::SkewNormal(g) = self.error_dist {
            skew_normal_params(g)?;
        }
        if let Some(mu) = &self.mu {
            if mu.len() != self.p {
                return Err(Error::DimensionMismatch {
                    expected: self.p,
                    got: mu.len(),
                });
            }
        }
        Ok(())
    }

    pub fn mu(&self) -> Result<Vec<f64>> {
        match &self.mu {
            Some(mu) => Ok(mu.clone()),
            None => generate_design_mu(self.design, self.n, self.p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Empirical bootstrap.
    Eb,
    /// Symmetry randomization.
    Sr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    TMax,
    TMaxIota,
    TPlus,
}

impl Statistic {
    pub fn spec(self) -> StatisticSpec {
        match self {
            Statistic::TMax => StatisticSpec::t_max(),
            Statistic::TMaxIota => StatisticSpec::t_max_iota(),
            Statistic::TPlus => StatisticSpec::t_plus(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Statistic::TMax => "tmax",
            Statistic::TMaxIota => "tmax-iota",
            Statistic::TPlus => "tplus",
        }
    }
}

/// A test in a simulation cell, written `sr-tmax`, `eb-tmax-iota-sel`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TestLabel {
    pub method: Method,
    pub statistic: Statistic,
    pub select: bool,
}

impl TestLabel {
    pub const fn new(method: Method, statistic: Statistic, select: bool) -> Self {
        TestLabel {
            method,
            statistic,
            select,
        }
    }

    /// The ten tests reported per cell, in table column order.
    pub const TABLE_ORDER: [TestLabel; 10] = [
        TestLabel::new(Method::Eb, Statistic::TMax, false),
        TestLabel::new(Method::Sr, Statistic::TMax, false),
        TestLabel::new(Method::Eb, Statistic::TMax, true),
        TestLabel::new(Method::Sr, Statistic::TMax, true),
        TestLabel::new(Method::Eb, Statistic::TMaxIota, false),
        TestLabel::new(Method::Sr, Statistic::TMaxIota, false),
        TestLabel::new(Method::Eb, Statistic::TMaxIota, true),
        TestLabel::new(Method::Sr, Statistic::TMaxIota, true),
        TestLabel::new(Method::Sr, Statistic::TPlus, false),
        TestLabel::new(Method::Sr, Statistic::TPlus, true),
    ];

    /// The label without the selection suffix.
    pub fn base(&self) -> String {
        let m = match self.method {
            Method::Eb => "eb",
            Method::Sr => "sr",
        };
        format!("{m}-{}", self.statistic.name())
    }
}

impl fmt::Display for TestLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.base(),
            if self.select { "-sel" } else { "" }
        )
    }
}

impl FromStr for TestLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let (t, select) = match t.strip_suffix("-sel") {
            Some(rest) => (rest.to_string(), true),
            None => (t, false),
        };
        let (method, stat) = t
            .split_once('-')
            .ok_or_else(|| Error::InvalidParameter(format!("bad test label {s:?}")))?;
        let method = match method {
            "eb" => Method::Eb,
            "sr" => Method::Sr,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "bad method in test label {s:?}"
                )))
            }
        };
        let statistic = match stat {
            "tmax" => Statistic::TMax,
            "tmax-iota" | "tmaxiota" => Statistic::TMaxIota,
            "tplus" => Statistic::TPlus,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "bad statistic in test label {s:?}"
                )))
            }
        };
        if method == Method::Eb && statistic == Statistic::TPlus {
            return Err(Error::BootstrapNeedsFiniteSet);
        }
        Ok(TestLabel {
            method,
            statistic,
            select,
        })
    }
}

/// Per-test summary over the reps of a cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestSummary {
    pub label: TestLabel,
    pub rejections: usize,
    pub rejection_rate: f64,
    pub n_errors: usize,
    /// Reps whose observed statistic was infinite.
    pub n_infinite: usize,
    /// Share of infinite statistics among all reflected statistics (SR tests).
    pub infinite_reflection_share: f64,
    /// Mean number of selected inequalities, for tests with selection.
    pub mean_selected: Option<f64>,
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub config: DesignConfig,
    pub tests: Vec<TestSummary>,
    /// Mean wall-clock seconds per rep for each test, in the order of `tests`.
    /// Not reproducible, so kept out of [`CellResult::tests`].
    pub mean_seconds: Vec<f64>,
}

impl CellResult {
    pub fn summary(&self, label: TestLabel) -> Option<&TestSummary> {
        self.tests.iter().find(|t| t.label == label)
    }

    pub fn rate(&self, label: TestLabel) -> Option<f64> {
        self.summary(label).map(|t| t.rejection_rate)
    }
}

/// Upper-triangular `A` with `A'A = Sigma`, `Sigma_ij = rho^|i-j|`.
pub fn ar1_factor(p: usize, rho: f64) -> Result<Array2<f64>> {
    if !(rho > -1.0 && rho < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rho must lie in (-1, 1), got {rho}"
        )));
    }
    let s = (1.0 - rho * rho).sqrt();
    Ok(Array2::from_shape_fn((p, p), |(i, j)| match i {
        _ if i > j => 0.0,
        0 => rho.powi(j as i32),
        _ => s * rho.powi((j - i) as i32),
    }))
}

/// Row-wise `E A` for the AR(1) factor via `y_0 = e_0`, `y_j = rho y_{j-1} + sqrt(1 - rho^2) e_j`.
fn ar1_transform(e: &mut Array2<f64>, rho: f64) {
    if rho == 0.0 {
        return;
    }
    let s = (1.0 - rho * rho).sqrt();
    for mut row in e.rows_mut() {
        for j in 1..row.len() {
            row[j] = rho * row[j - 1] + s * row[j];
        }
    }
}

/// Location, scale and shape of the skew-normal with mean 0, variance 1 and skewness `gamma`.
pub fn skew_normal_params(gamma: f64) -> Result<(f64, f64, f64)> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(gamma.abs() < MAX_SKEWNESS) {
        return Err(Error::InvalidParameter(format!(
            "skewness must satisfy |gamma| < {MAX_SKEWNESS}, got {gamma}"
        )));
    }
    if gamma == 0.0 {
        return Ok((0.0, 1.0, 0.0));
    }
    let g = gamma.abs().powf(2.0 / 3.0);
    let k = ((4.0 - PI) / 2.0).powf(2.0 / 3.0);
    let delta = gamma.signum() * (PI / 2.0 * g / (g + k)).sqrt();
    let shape = delta / (1.0 - delta * delta).sqrt();
    let scale = 1.0 / (1.0 - 2.0 * delta * delta / PI).sqrt();
    let location = -scale * delta * (2.0 / PI).sqrt();
    Ok((location, scale, shape))
}

/// Mean, variance and skewness of the skew-normal with the given parameters.
pub fn skew_normal_moments(location: f64, scale: f64, shape: f64) -> (f64, f64, f64) {
    let delta = shape / (1.0 + shape * shape).sqrt();
    let b = delta * (2.0 / PI).sqrt();
    let mean = location + scale * b;
    let var = scale * scale * (1.0 - b * b);
    let skew = (4.0 - PI) / 2.0 * b.powi(3) / (1.0 - b * b).powf(1.5);
    (mean, var, skew)
}

/// `n x p` matrix of i.i.d. draws from `dist`.
pub fn draw_errors(dist: ErrorDist, n: usize, p: usize, seed: u64) -> Result<Array2<f64>> {
    let mut rng = rng_from_seed(seed);
    fill(dist, n, p, &mut rng)
}

fn fill<R: Rng>(dist: ErrorDist, n: usize, p: usize, rng: &mut R) -> Result<Array2<f64>> {
    match dist {
        ErrorDist::StudentT4Scaled => {
            let t = StudentT::new(4.0).expect("valid degrees of freedom");
            Ok(Array2::from_shape_simple_fn((n, p), || {
                t.sample(rng) / SQRT_2
            }))
        }
        ErrorDist::SkewNormal(gamma) => {
            let (loc, scale, shape) = skew_normal_params(gamma)?;
            let d = SkewNormal::new(loc, scale, shape)
                .map_err(|e| Error::InvalidParameter(format!("skew-normal: {e}")))?;
            Ok(Array2::from_shape_simple_fn((n, p), || d.sample(rng)))
        }
    }
}

/// The mean vector of a design.
pub fn generate_design_mu(design: Design, n: usize, p: usize) -> Result<Vec<f64>> {
    let lead =
        |k: usize, head: f64, tail: f64| (0..p).map(|j| if j < k { head } else { tail }).collect();
    let tenth = p / 10;
    match (design, n) {
        (Design::D1, _) => Ok(vec![0.0; p]),
        (Design::D2, 400) => Ok(lead(tenth, 0.0, -0.8)),
        (Design::D2, 30) => Ok(lead(10, 0.0, -5.0)),
        (Design::D3, 400) => Ok(vec![0.01; p]),
        (Design::D3, 30) => Ok(vec![0.03; p]),
        (Design::D4, 400) => Ok(lead(tenth, 0.02, -0.75)),
        (Design::D4, 30) => Ok(lead(10, 0.3, -5.0)),
        _ => Err(Error::NoReferenceMu {
            design: design.to_string(),
            n,
        }),
    }
}

fn rep_seed(cfg: &DesignConfig, rep: usize) -> u64 {
    substream(cfg.seed, rep as u64)
}

/// The data set for replication `rep`; each rep has its own random stream.
pub fn generate_dataset(cfg: &DesignConfig, rep: usize) -> Result<DataMatrix> {
    cfg.validate()?;
    let mu = cfg.mu()?;
    dataset_with_mu(cfg, &mu, rep)
}

fn dataset_with_mu(cfg: &DesignConfig, mu: &[f64], rep: usize) -> Result<DataMatrix> {
    let mut x = draw_errors(
        cfg.error_dist,
        cfg.n,
        cfg.p,
        substream(rep_seed(cfg, rep), 0),
    )?;
    ar1_transform(&mut x, cfg.rho);
    for mut row in x.rows_mut() {
        row.iter_mut().zip(mu).for_each(|(v, &m)| *v += m);
    }
    DataMatrix::new(x)
}

#[derive(Debug, Clone)]
struct RepRecord {
    reject: bool,
    error: Option<String>,
    infinite: bool,
    infinite_reflections: usize,
    reflections: usize,
    selected: Option<usize>,
    seconds: f64,
}

fn run_test(
    cfg: &DesignConfig,
    x: &DataMatrix,
    plan: Option<&ReflectionPlan>,
    boot_seed: u64,
    label: TestLabel,
) -> Result<TestOutcome> {
    let plan = || {
        plan.ok_or_else(|| Error::InvalidParameter("randomization test without reflections".into()))
    };
    let spec = label.statistic.spec();
    let boot = BootstrapConfig {
        resamples: cfg.b,
        alpha: cfg.alpha,
        beta: if label.select { SELECTION_BETA } else { 0.0 },
        seed: boot_seed,
    };
    match label.method {
        Method::Eb => {
            let set = match &spec {
                StatisticSpec::Finite(set) => set.clone(),
                StatisticSpec::NonNegativeOrthant => return Err(Error::BootstrapNeedsFiniteSet),
            };
            if label.select {
                eb_test_selected(x, &set, &boot)
            } else {
                eb_test(x, &set, &boot)
            }
        }
        Method::Sr if !label.select => randomization_test(x, &spec, plan()?, cfg.alpha),
        Method::Sr => {
            let source = match cfg.selection {
                SelectionMode::PerReflection => CutoffSource::EbPerReflection {
                    beta: SELECTION_BETA,
                    resamples: cfg.b,
                    seed: boot_seed,
                },
                SelectionMode::FixedCutoff => {
                    CutoffSource::Fixed(eb_selection_cutoff(x, SELECTION_BETA, cfg.b, boot_seed)?)
                }
                SelectionMode::ObservedSet => {
                    let c = eb_selection_cutoff(x, SELECTION_BETA, cfg.b, boot_seed)?;
                    let t = t_values(&sample_moments(x));
                    let cols: Vec<usize> = (0..x.p()).filter(|&j| t[j] > c).collect();
                    let mut out = if cols.is_empty() {
                        let none = SelectionRule::TCutoff(CutoffSource::Fixed(f64::INFINITY));
                        randomization_test_selected(x, &spec, &none, plan()?, cfg.alpha)?
                    } else {
                        randomization_test(&x.select_columns(&cols)?, &spec, plan()?, cfg.alpha)?
                    };
                    out.selected = Some(cols);
                    out.cutoff = Some(c);
                    return Ok(out);
                }
            };
            randomization_test_selected(
                x,
                &spec,
                &SelectionRule::TCutoff(source),
                plan()?,
                cfg.alpha,
            )
        }
    }
}

fn run_rep(cfg: &DesignConfig, mu: &[f64], tests: &[TestLabel], rep: usize) -> Vec<RepRecord> {
    let failed = |e: &Error| RepRecord {
        reject: false,
        error: Some(e.to_string()),
        infinite: false,
        infinite_reflections: 0,
        reflections: 0,
        selected: None,
        seconds: 0.0,
    };
    let seed = rep_seed(cfg, rep);
    let x = match dataset_with_mu(cfg, mu, rep) {
        Ok(x) => x,
        Err(e) => return tests.iter().map(|_| failed(&e)).collect(),
    };
    let needs_plan = tests.iter().any(|t| t.method == Method::Sr);
    let plan = needs_plan.then(|| sample_reflections(cfg.n, cfg.m, substream(seed, 1)));
    let boot_seed = substream(seed, 2);
    tests
        .iter()
        .map(|&label| {
            let start = Instant::now();
            let outcome = match &plan {
                Some(Err(e)) if label.method == Method::Sr => Err(e.clone()),
                Some(Ok(plan)) => run_test(cfg, &x, Some(plan), boot_seed, label),
                _ => run_test(cfg, &x, None, boot_seed, label),
            };
            let seconds = start.elapsed().as_secs_f64();
            match outcome {
                Ok(o) => RepRecord {
                    reject: o.reject,
                    error: None,
                    infinite: o.statistic.tag == StatTag::Infinite,
                    infinite_reflections: if label.method == Method::Sr {
                        o.n_infinite_reflections
                    } else {
                        0
                    },
                    reflections: if label.method == Method::Sr { o.m } else { 0 },
                    selected: o.selected.as_ref().map(Vec::len),
                    seconds,
                },
                Err(e) => RepRecord {
                    seconds,
                    ..failed(&e)
                },
            }
        })
        .collect()
}

/// Runs every test on `cfg.reps` generated data sets.
///
/// Errors in individual reps are counted, not propagated; an errored rep counts
/// as a non-rejection. Results do not depend on the number of worker threads.
pub fn run_cell(cfg: &DesignConfig, tests: &[TestLabel]) -> Result<CellResult> {
    run_cell_with_progress(cfg, tests, |_| {})
}

/// [`run_cell`] with a callback invoked after each completed rep (in completion order).
pub fn run_cell_with_progress<F>(
    cfg: &DesignConfig,
    tests: &[TestLabel],
    progress: F,
) -> Result<CellResult>
where
    F: Fn(usize) + Sync,
{
    if tests.is_empty() {
        return Err(Error::InvalidParameter("no tests requested".into()));
    }
    cfg.validate()?;
    let mu = cfg.mu()?;
    let one = |rep: usize| {
        let r = run_rep(cfg, &mu, tests, rep);
        progress(rep);
        r
    };
    #[cfg(feature = "parallel")]
    let records: Vec<Vec<RepRecord>> = {
        use rayon::prelude::*;
        (0..cfg.reps).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let records: Vec<Vec<RepRecord>> = (0..cfg.reps).map(one).collect();

    let reps = cfg.reps as f64;
    let mut summaries = Vec::with_capacity(tests.len());
    let mut mean_seconds = Vec::with_capacity(tests.len());
    for (i, &label) in tests.iter().enumerate() {
        let col = records.iter().map(|r| &r[i]);
        let rejections = col.clone().filter(|r| r.reject).count();
        let reflections: usize = col.clone().map(|r| r.reflections).sum();
        let infinite_reflections: usize = col.clone().map(|r| r.infinite_reflections).sum();
        let selected: Vec<usize> = col.clone().filter_map(|r| r.selected).collect();
        summaries.push(TestSummary {
            label,
            rejections,
            rejection_rate: rejections as f64 / reps,
            n_errors: col.clone().filter(|r| r.error.is_some()).count(),
            n_infinite: col.clone().filter(|r| r.infinite).count(),
            infinite_reflection_share: if reflections == 0 {
                0.0
            } else {
                infinite_reflections as f64 / reflections as f64
            },
            mean_selected: (!selected.is_empty())
                .then(|| selected.iter().sum::<usize>() as f64 / selected.len() as f64),
            first_error: col.clone().find_map(|r| r.error.clone()),
        });
        mean_seconds.push(col.map(|r| r.seconds).sum::<f64>() / reps);
    }
    Ok(CellResult {
        config: cfg.clone(),
        tests: summaries,
        mean_seconds,
    })
}

/// A point of a density curve: the error density and the standard normal reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPoint {
    pub x: f64,
    pub pdf: f64,
    pub normal_pdf: f64,
}

fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x / SQRT_2))
}

/// Density of a unit-variance error distribution at `x`.
pub fn error_pdf(dist: ErrorDist, x: f64) -> Result<f64> {
    match dist {
        ErrorDist::StudentT4Scaled => {
            // t(4) density 3/8 (1 + t^2/4)^(-5/2), rescaled to unit variance.
            let t = SQRT_2 * x;
            Ok(SQRT_2 * 0.375 * (1.0 + t * t / 4.0).powf(-2.5))
        }
        ErrorDist::SkewNormal(gamma) => {
            let (loc, scale, shape) = skew_normal_params(gamma)?;
            let z = (x - loc) / scale;
            Ok(2.0 / scale * normal_pdf(z) * normal_cdf(shape * z))
        }
    }
}

/// Density values on `grid`, with the standard normal density for reference.
pub fn density_curve(dist: ErrorDist, grid: &[f64]) -> Result<Vec<DensityPoint>> {
    grid.iter()
        .map(|&x| {
            Ok(DensityPoint {
                x,
                pdf: error_pdf(dist, x)?,
                normal_pdf: normal_pdf(x),
            })
        })
        .collect()
}

/// Equally spaced grid of `points` values on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}
