//! Lawson–Hanson active-set solver for non-negative least squares.
//!
//! The solver works on the normal equations: it only needs the Gram matrix
//! `G = A'A` and `c = A'b`. Sign-flipping the rows of `A` leaves `G` unchanged,
//! so a single Gram matrix serves every reflection of a data set.

use ndarray::{Array1, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

/// Relative pivot size below which a column is treated as linearly dependent
/// on the current passive set.
const DEPENDENCE_TOL: f64 = 1e-12;

/// Result of [`nnls`].
#[derive(Debug, Clone, PartialEq)]
pub struct NnlsSolution {
    pub lambda: Array1<f64>,
    pub residual: Array1<f64>,
    pub iterations: usize,
}

/// Result of the Gram-form solver: the minimizer of `l'Gl - 2c'l` over `l >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSolution {
    pub lambda: Vec<f64>,
    /// Indices with strictly positive weight, in insertion order.
    pub support: Vec<usize>,
    pub iterations: usize,
}

/// KKT tolerance for right-hand side `c = A'b`: `1e-8 * |c|_inf`, floored at `1e-12`.
pub fn kkt_tolerance(c: ArrayView1<'_, f64>) -> f64 {
    let inf = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (1e-8 * inf).max(1e-12)
}

/// Minimizes `|b - A lambda|^2` subject to `lambda >= 0`.
pub fn nnls(a: ArrayView2<'_, f64>, b: ArrayView1<'_, f64>) -> Result<NnlsSolution> {
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    let gram = a.t().dot(&a);
    let c = a.t().dot(&b);
    let sol = nnls_gram(gram.view(), c.view(), None)?;
    let lambda = Array1::from(sol.lambda);
    let residual = &b - &a.dot(&lambda);
    Ok(NnlsSolution {
        lambda,
        residual,
        iterations: sol.iterations,
    })
}

/// Gram-form Lawson–Hanson. `allowed`, when given, restricts which variables may
/// leave zero; all others stay fixed at zero.
pub fn nnls_gram(
    gram: ArrayView2<'_, f64>,
    c: ArrayView1<'_, f64>,
    allowed: Option<&[bool]>,
) -> Result<GramSolution> {
    let p = c.len();
    if gram.dim() != (p, p) {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: gram.nrows(),
        });
    }
    let is_allowed = |j: usize| allowed.is_none_or(|a| a[j]);
    let n_allowed = (0..p).filter(|&j| is_allowed(j)).count();
    let tol = {
        let inf = (0..p)
            .filter(|&j| is_allowed(j))
            .fold(0.0f64, |m, j| m.max(c[j].abs()));
        (1e-8 * inf).max(1e-12)
    };
    let max_iter = 3 * n_allowed.max(1);

    let mut lambda = vec![0.0; p];
    let mut in_passive = vec![false; p];
    let mut rejected = vec![false; p];
    let mut w: Vec<f64> = c.to_vec();
    let mut chol = Cholesky::default();
    let mut iterations = 0;

    loop {
        let mut cand: Option<usize> = None;
        for j in 0..p {
            if is_allowed(j)
                && !in_passive[j]
                && !rejected[j]
                && w[j] > tol
                && cand.is_none_or(|k| w[j] > w[k])
            {
                cand = Some(j);
            }
        }
        let Some(j) = cand else { break };
        if iterations >= max_iter {
            return Err(Error::NnlsNotConverged {
                iterations,
                best: lambda,
            });
        }

        if !chol.push(gram, j) {
            rejected[j] = true;
            continue;
        }
        let mut z = chol.solve(c);
        if *z.last().unwrap() <= 0.0 {
            chol.pop();
            rejected[j] = true;
            continue;
        }
        iterations += 1;
        in_passive[j] = true;

        // Step back toward the previous feasible point until every passive weight is positive.
        while z.iter().any(|&v| v <= 0.0) {
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::NnlsNotConverged {
                    iterations,
                    best: lambda,
                });
            }
            let mut alpha = f64::INFINITY;
            let mut leaving = 0;
            for (pos, (&k, &zk)) in chol.index.iter().zip(&z).enumerate() {
                if zk <= 0.0 {
                    let a = lambda[k] / (lambda[k] - zk);
                    if a < alpha {
                        alpha = a;
                        leaving = pos;
                    }
                }
            }
            for (&k, &zk) in chol.index.iter().zip(&z) {
                lambda[k] += alpha * (zk - lambda[k]);
            }
            let leaving_index = chol.index[leaving];
            let keep: Vec<usize> = chol
                .index
                .iter()
                .copied()
                .filter(|&k| k != leaving_index && lambda[k] > 0.0)
                .collect();
            for &k in &chol.index {
                if !keep.contains(&k) {
                    lambda[k] = 0.0;
                    in_passive[k] = false;
                }
            }
            chol.rebuild(gram, &keep);
            for &k in keep.iter().filter(|k| !chol.index.contains(k)) {
                lambda[k] = 0.0;
                in_passive[k] = false;
            }
            z = chol.solve(c);
            if chol.index.is_empty() {
                break;
            }
        }
        for (&k, &zk) in chol.index.iter().zip(&z) {
            lambda[k] = zk;
        }

        w.iter_mut().zip(c.iter()).for_each(|(wj, &cj)| *wj = cj);
        for &k in &chol.index {
            let lk = lambda[k];
            let row = gram.row(k);
            for (wj, &g) in w.iter_mut().zip(row.iter()) {
                *wj -= lk * g;
            }
        }
        rejected.iter_mut().for_each(|r| *r = false);
    }

    Ok(GramSolution {
        lambda,
        support: chol.index,
        iterations,
    })
}

/// Incremental Cholesky factor of the Gram submatrix on the passive set.
#[derive(Debug, Default)]
struct Cholesky {
    index: Vec<usize>,
    /// Row `k` of the lower-triangular factor, length `k + 1`.
    rows: Vec<Vec<f64>>,
}

impl Cholesky {
    fn push(&mut self, gram: ArrayView2<'_, f64>, j: usize) -> bool {
        let k = self.index.len();
        let mut row = Vec::with_capacity(k + 1);
        for i in 0..k {
            let li = &self.rows[i];
            let s: f64 = li[..i].iter().zip(&row).map(|(a, b)| a * b).sum();
            row.push((gram[[self.index[i], j]] - s) / li[i]);
        }
        let gjj = gram[[j, j]];
        let d2 = gjj - row.iter().map(|v| v * v).sum::<f64>();
        // Negated so that a NaN diagonal is rejected.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(gjj > 0.0) || d2 <= DEPENDENCE_TOL * gjj {
            return false;
        }
        row.push(d2.sqrt());
        self.rows.push(row);
        self.index.push(j);
        true
    }

    fn pop(&mut self) {
        self.rows.pop();
        self.index.pop();
    }

    fn rebuild(&mut self, gram: ArrayView2<'_, f64>, keep: &[usize]) {
        self.index.clear();
        self.rows.clear();
        for &k in keep {
            // A previously accepted column can only fail here through rounding; drop it.
            let _ = self.push(gram, k);
        }
    }

    fn solve(&self, c: ArrayView1<'_, f64>) -> Vec<f64> {
        let k = self.index.len();
        let mut u = vec![0.0; k];
        for i in 0..k {
            let li = &self.rows[i];
            let s: f64 = li[..i].iter().zip(&u).map(|(a, b)| a * b).sum();
            u[i] = (c[self.index[i]] - s) / li[i];
        }
        for i in (0..k).rev() {
            let mut s = u[i];
            for (row, ur) in self.rows[i + 1..k].iter().zip(&u[i + 1..k]) {
                s -= row[i] * ur;
            }
            u[i] = s / self.rows[i][i];
        }
        u
    }
}
