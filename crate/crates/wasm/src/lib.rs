//! Browser bindings for the interactive demo page in `www/`.

use momineq::randomization::{reflected_statistics, sample_reflections};
use momineq::simulation::{density_curve, linear_grid, Design, DesignConfig, ErrorDist};
use momineq::statistics::{evaluate, StatisticSpec};
use momineq::{generate_dataset, sample_moments, DataMatrix};
use wasm_bindgen::prelude::*;

fn js(e: momineq::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn matrix(data: &[f64], n: usize, p: usize) -> Result<DataMatrix, JsError> {
    if data.len() != n * p {
        return Err(JsError::new(&format!(
            "expected {n} x {p} = {} values, got {}",
            n * p,
            data.len()
        )));
    }
    let rows: Vec<Vec<f64>> = data.chunks(p).map(<[f64]>::to_vec).collect();
    DataMatrix::from_rows(&rows).map_err(js)
}

fn spec(statistic: &str) -> Result<StatisticSpec, JsError> {
    match statistic {
        "tmax" => Ok(StatisticSpec::t_max()),
        "tmax-iota" => Ok(StatisticSpec::t_max_iota()),
        "tplus" => Ok(StatisticSpec::t_plus()),
        _ => Err(JsError::new(&format!("unknown statistic {statistic:?}"))),
    }
}

/// Unit-variance error density on an equally spaced grid, as interleaved
/// `(x, pdf, normal_pdf)` triples. `gamma = NaN` selects the scaled t(4).
#[wasm_bindgen]
pub fn error_density(gamma: f64, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, JsError> {
    let dist = if gamma.is_nan() {
        ErrorDist::StudentT4Scaled
    } else {
        ErrorDist::SkewNormal(gamma)
    };
    let curve = density_curve(dist, &linear_grid(lo, hi, points)).map_err(js)?;
    Ok(curve
        .iter()
        .flat_map(|d| [d.x, d.pdf, d.normal_pdf])
        .collect())
}

/// A row-major `n x p` sample `X = 1 mu' + E A` with AR(1) correlation `rho`,
/// `mu_j = shift` for every column and errors of skewness `gamma` (`NaN` for t(4)).
#[wasm_bindgen]
pub fn simulate_data(
    n: usize,
    p: usize,
    rho: f64,
    shift: f64,
    gamma: f64,
    seed: u64,
) -> Result<Vec<f64>, JsError> {
    let mut cfg = DesignConfig::new(n, p, rho, Design::D1);
    cfg.error_dist = if gamma.is_nan() {
        ErrorDist::StudentT4Scaled
    } else {
        ErrorDist::SkewNormal(gamma)
    };
    cfg.mu = Some(vec![shift; p]);
    cfg.seed = seed;
    let x = generate_dataset(&cfg, 0).map_err(js)?;
    Ok(x.view().iter().copied().collect())
}

/// For two-column data, `sqrt(n) mu'l / sqrt(l' Sigma l)` along
/// `l = (cos t, sin t)` for `points` angles in `[0, pi/2]`, as `(t, value)` pairs.
/// Directions with zero variance give `Infinity` (positive mean) or `NaN`.
#[wasm_bindgen]
pub fn angular_objective(data: &[f64], n: usize, points: usize) -> Result<Vec<f64>, JsError> {
    let x = matrix(data, n, 2)?;
    let m = sample_moments(&x);
    let sqrt_n = (n as f64).sqrt();
    let mut out = Vec::with_capacity(2 * points);
    for t in linear_grid(0.0, std::f64::consts::FRAC_PI_2, points) {
        let l = [t.cos(), t.sin()];
        let num = m.mu_hat[0] * l[0] + m.mu_hat[1] * l[1];
        let s = &m.sigma_hat;
        let q = l[0] * l[0] * s[[0, 0]] + 2.0 * l[0] * l[1] * s[[0, 1]] + l[1] * l[1] * s[[1, 1]];
        let v = if q > 1e-12 {
            sqrt_n * num / q.sqrt()
        } else if num > 0.0 {
            f64::INFINITY
        } else {
            f64::NAN
        };
        out.extend([t, v]);
    }
    Ok(out)
}

/// The statistic (`tmax`, `tmax-iota` or `tplus`) of row-major `n x p` data.
#[wasm_bindgen]
pub fn statistic(data: &[f64], n: usize, p: usize, statistic: &str) -> Result<f64, JsError> {
    let x = matrix(data, n, p)?;
    Ok(evaluate(&x, &spec(statistic)?).map_err(js)?.value)
}

/// `T(RX)` for `m` sampled reflections; entry 0 is the observed `T(X)`.
#[wasm_bindgen]
pub fn reflection_distribution(
    data: &[f64],
    n: usize,
    p: usize,
    statistic: &str,
    m: usize,
    seed: u64,
) -> Result<Vec<f64>, JsError> {
    let x = matrix(data, n, p)?;
    let plan = sample_reflections(n, m, seed).map_err(js)?;
    let values = reflected_statistics(&x, &spec(statistic)?, &plan).map_err(js)?;
    Ok(values.into_iter().map(|v| v.value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_is_interleaved() {
        let d = error_density(0.0, -1.0, 1.0, 3).unwrap();
        assert_eq!(d.len(), 9);
        assert_eq!(d[3], 0.0);
        assert_eq!(d[4], d[5]);
    }

    #[test]
    fn reflection_distribution_starts_with_observed() {
        let data = simulate_data(12, 2, 0.3, 0.5, f64::NAN, 1).unwrap();
        let t = statistic(&data, 12, 2, "tplus").unwrap();
        let dist = reflection_distribution(&data, 12, 2, "tplus", 50, 4).unwrap();
        assert_eq!(dist.len(), 50);
        assert_eq!(dist[0], t);
        let ang = angular_objective(&data, 12, 101).unwrap();
        let best = ang
            .chunks(2)
            .map(|c| c[1])
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(best <= t * (1.0 + 1e-9));
    }
}
