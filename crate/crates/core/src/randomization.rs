//! Sign-flip randomization tests.
//!
//! A reflection multiplies each observation (row) by `+1` or `-1`. Under a
//! symmetric error distribution and `mu = 0`, the data and each of its
//! reflections are equally likely, so the rank of `T(X)` among `T(RX)` over a
//! sample of reflections gives an exact p-value.

use std::collections::HashSet;

use ndarray::Array2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bootstrap::{BootstrapWeights, EbSelector};
use crate::error::{Error, Result};
use crate::moments::DataMatrix;
use crate::rng::rng_from_seed;
use crate::statistics::{Evaluator, Reflected, StatValue, StatisticSpec};

/// Reflections evaluated per GEMM batch.
const CHUNK: usize = 64;

/// A sign vector packed into bits; a set bit means `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector {
    n: usize,
    bits: Vec<u64>,
}

impl SignVector {
    pub fn identity(n: usize) -> Self {
        SignVector {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_signs(signs: &[f64]) -> Self {
        let mut v = SignVector::identity(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            if s < 0.0 {
                v.bits[i / 64] |= 1 << (i % 64);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn sign(&self, i: usize) -> f64 {
        if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn to_signs(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.sign(i)).collect()
    }

    /// Elementwise product, i.e. composition of the two reflections.
    pub fn compose(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.n, other.n);
        SignVector {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }
}

/// The identity plus `M - 1` distinct non-identity reflections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionPlan {
    n: usize,
    signs: Vec<SignVector>,
}

impl ReflectionPlan {
    /// Builds a plan from explicit sign vectors; the first must be the identity and
    /// all must be distinct.
    pub fn from_sign_vectors(signs: Vec<SignVector>) -> Result<Self> {
        let first = signs
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty plan".into()))?;
        let n = first.len();
        if !first.is_identity() {
            return Err(Error::InvalidParameter(
                "first reflection must be the identity".into(),
            ));
        }
        if signs.iter().any(|s| s.len() != n) {
            return Err(Error::InvalidParameter(
                "sign vectors differ in length".into(),
            ));
        }
        let distinct: HashSet<&SignVector> = signs.iter().collect();
        if distinct.len() != signs.len() {
            return Err(Error::InvalidParameter(
                "sign vectors are not distinct".into(),
            ));
        }
        Ok(ReflectionPlan { n, signs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[SignVector] {
        &self.signs
    }

    /// Multiplies every reflection by `s`.
    pub fn composed_with(&self, s: &SignVector) -> ReflectionPlan {
        ReflectionPlan {
            n: self.n,
            signs: self.signs.iter().map(|v| v.compose(s)).collect(),
        }
    }

    fn sign_matrix(&self, range: std::ops::Range<usize>) -> Array2<f64> {
        let mut out = Array2::zeros((range.len(), self.n));
        for (mut row, v) in out.rows_mut().into_iter().zip(&self.signs[range]) {
            for (i, x) in row.iter_mut().enumerate() {
                *x = v.sign(i);
            }
        }
        out
    }
}

/// Draws `m` reflections of `n` rows: the identity first, then `m - 1` distinct
/// non-identity reflections sampled uniformly without replacement.
pub fn sample_reflections(n: usize, m: usize, seed: u64) -> Result<ReflectionPlan> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("n and M must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut signs = vec![SignVector::identity(n)];
    if n <= 62 {
        let total = 1u64 << n;
        if m as u64 > total {
            return Err(Error::GroupExhausted {
                requested: m as u64,
                available: total,
            });
        }
        let pack = |bits: u64| SignVector {
            n,
            bits: vec![bits],
        };
        if n <= 20 && m as u64 > total / 2 {
            // Dense request: partial Fisher-Yates over the non-identity patterns.
            let mut pool: Vec<u64> = (1..total).collect();
            for k in 0..m - 1 {
                let pick = rng.random_range(k..pool.len());
                pool.swap(k, pick);
                signs.push(pack(pool[k]));
            }
        } else {
            let mask = total - 1;
            let mut seen: HashSet<u64> = HashSet::with_capacity(m);
            seen.insert(0);
            while signs.len() < m {
                let bits = rng.random::<u64>() & mask;
                if seen.insert(bits) {
                    signs.push(pack(bits));
                }
            }
        }
    } else {
        let words = n.div_ceil(64);
        let tail = n % 64;
        let mut seen: HashSet<Vec<u64>> = HashSet::with_capacity(m);
        seen.insert(vec![0; words]);
        while signs.len() < m {
            let mut bits: Vec<u64> = (0..words).map(|_| rng.random::<u64>()).collect();
            if tail != 0 {
                bits[words - 1] &= (1u64 << tail) - 1;
            }
            if seen.insert(bits.clone()) {
                signs.push(SignVector { n, bits });
            }
        }
    }
    Ok(ReflectionPlan { n, signs })
}

/// `RX`: row `i` multiplied by `s_i`.
pub fn apply_reflection(x: &DataMatrix, s: &SignVector) -> Result<DataMatrix> {
    if s.len() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            got: s.len(),
        });
    }
    DataMatrix::new(x.scaled_rows(&s.to_signs()))
}

/// How the selection cutoff `c` in `J(X) = {j : t_j > c}` is obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CutoffSource {
    /// The same constant for every reflection.
    Fixed(f64),
    /// Recomputed from each reflected data set by the empirical bootstrap,
    /// `c = -2 * c_beta`, with resampling indices drawn from `seed`.
    EbPerReflection {
        beta: f64,
        resamples: usize,
        seed: u64,
    },
}

/// Inequality selection applied before computing the statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SelectionRule {
    KeepAll,
    TCutoff(CutoffSource),
}

/// Result of a randomization or bootstrap test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub statistic: StatValue,
    pub p_value: f64,
    /// Numerator of the p-value.
    pub p_count: usize,
    /// Denominator of the p-value.
    pub p_denominator: usize,
    pub reject: bool,
    pub alpha: f64,
    /// Number of reflections (or bootstrap resamples).
    pub m: usize,
    pub n_infinite_reflections: usize,
    /// Selected columns `J(X)` (zero-based) when selection was applied.
    pub selected: Option<Vec<usize>>,
    pub cutoff: Option<f64>,
    /// Bootstrap critical value, for bootstrap tests.
    pub critical_value: Option<f64>,
}

fn check_inputs(x: &DataMatrix, plan: &ReflectionPlan, alpha: f64) -> Result<()> {
    if plan.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            got: plan.n(),
        });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Applies `f` to every reflection in plan order.
fn map_reflections<T, F>(ev: &Evaluator<'_>, plan: &ReflectionPlan, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &Reflected<'_>) -> Result<T> + Sync,
{
    let starts: Vec<usize> = (0..plan.m()).step_by(CHUNK).collect();
    let run_chunk = |&start: &usize| -> Result<Vec<T>> {
        let range = start..(start + CHUNK).min(plan.m());
        let s = plan.sign_matrix(range.clone());
        let sums = ev.reflected_sums(&s);
        range
            .enumerate()
            .map(|(row, k)| {
                let signs = s.row(row);
                let r = Reflected {
                    signs: signs.as_slice().unwrap(),
                    sums: sums.row(row),
                };
                f(k, &r)
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let chunks: Vec<Result<Vec<T>>> = {
        use rayon::prelude::*;
        starts.par_iter().map(run_chunk).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Result<Vec<T>>> = starts.iter().map(run_chunk).collect();
    let mut out = Vec::with_capacity(plan.m());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// `T(RX)` for every reflection in the plan; entry 0 is `T(X)`.
pub fn reflected_statistics(
    x: &DataMatrix,
    spec: &StatisticSpec,
    plan: &ReflectionPlan,
) -> Result<Vec<StatValue>> {
    if plan.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            got: plan.n(),
        });
    }
    let ev = Evaluator::new(x, spec)?;
    map_reflections(&ev, plan, |_, r| ev.evaluate(r, None))
}

fn outcome_from_values(values: &[StatValue], alpha: f64) -> TestOutcome {
    let observed = values[0].clone();
    let count = values.iter().filter(|v| v.ge(&observed)).count();
    let m = values.len();
    let p_value = count as f64 / m as f64;
    TestOutcome {
        n_infinite_reflections: values.iter().filter(|v| v.is_infinite()).count(),
        statistic: observed,
        p_value,
        p_count: count,
        p_denominator: m,
        reject: p_value <= alpha,
        alpha,
        m,
        selected: None,
        cutoff: None,
        critical_value: None,
    }
}

/// Symmetry randomization test: reject when `|{R : T(RX) >= T(X)}| / M <= alpha`.
pub fn randomization_test(
    x: &DataMatrix,
    spec: &StatisticSpec,
    plan: &ReflectionPlan,
    alpha: f64,
) -> Result<TestOutcome> {
    check_inputs(x, plan, alpha)?;
    let values = reflected_statistics(x, spec, plan)?;
    Ok(outcome_from_values(&values, alpha))
}

struct Selected {
    columns: Vec<usize>,
    cutoff: Option<f64>,
}

/// Randomization test with inequality selection recomputed on every reflection:
/// the statistic for `R` is `T((RX)_{J(RX)})`, with an empty selection giving zero.
pub fn randomization_test_selected(
    x: &DataMatrix,
    spec: &StatisticSpec,
    selector: &SelectionRule,
    plan: &ReflectionPlan,
    alpha: f64,
) -> Result<TestOutcome> {
    check_inputs(x, plan, alpha)?;
    let ev = Evaluator::new(x, spec)?;
    let p = x.p();
    let eb = match selector {
        SelectionRule::TCutoff(CutoffSource::EbPerReflection {
            beta,
            resamples,
            seed,
        }) => {
            let weights = BootstrapWeights::draw(x.n(), *resamples, *seed)?;
            Some(EbSelector::new(weights, *beta)?)
        }
        _ => None,
    };
    let select = |k: usize, r: &Reflected<'_>| -> Selected {
        match selector {
            SelectionRule::KeepAll => Selected {
                columns: (0..p).collect(),
                cutoff: None,
            },
            SelectionRule::TCutoff(CutoffSource::Fixed(c)) => {
                let t = ev.t_values(r);
                Selected {
                    columns: (0..p).filter(|&j| t[j] > *c).collect(),
                    cutoff: Some(*c),
                }
            }
            SelectionRule::TCutoff(CutoffSource::EbPerReflection { .. }) => {
                let sel = eb
                    .as_ref()
                    .expect("selector prepared")
                    .select(&ev, r, k == 0);
                Selected {
                    columns: sel.columns,
                    cutoff: sel.cutoff,
                }
            }
        }
    };
    let results = map_reflections(&ev, plan, |k, r| {
        let sel = select(k, r);
        let value = if sel.columns.is_empty() {
            StatValue::zero()
        } else if sel.columns.len() == p {
            ev.evaluate(r, None)?
        } else {
            ev.evaluate(r, Some(&sel.columns))?
        };
        Ok((value, (k == 0).then_some(sel)))
    })?;
    let mut observed_sel = None;
    let values: Vec<StatValue> = results
        .into_iter()
        .map(|(v, sel)| {
            if sel.is_some() {
                observed_sel = sel;
            }
            v
        })
        .collect();
    let mut outcome = outcome_from_values(&values, alpha);
    if let Some(sel) = observed_sel {
        outcome.selected = Some(sel.columns);
        outcome.cutoff = sel.cutoff;
    }
    Ok(outcome)
}
