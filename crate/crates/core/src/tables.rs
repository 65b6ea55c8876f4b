//! Published rejection rates for the five simulation tables, and the cell
//! presets needed to reproduce them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulation::{Design, DesignConfig, ErrorDist, TestLabel};

/// One table row: block (0 = upper panel, 1 = lower panel), `p`, `rho` and the
/// ten rates in [`TestLabel::TABLE_ORDER`]; `None` marks a test not run.
type Row = (u8, usize, f64, [Option<f64>; 10]);

const fn row(block: u8, p: usize, rho: f64, rates: [Option<f64>; 10]) -> Row {
    (block, p, rho, rates)
}

/// A cell of a published table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCell {
    pub table: u8,
    pub n: usize,
    pub p: usize,
    pub rho: f64,
    pub design: Design,
    pub error_dist: ErrorDist,
    /// Published rates in [`TestLabel::TABLE_ORDER`].
    pub rates: [Option<f64>; 10],
}

impl ReferenceCell {
    /// Tests with a published value.
    pub fn tests(&self) -> Vec<TestLabel> {
        TestLabel::TABLE_ORDER
            .iter()
            .zip(&self.rates)
            .filter(|(_, r)| r.is_some())
            .map(|(&t, _)| t)
            .collect()
    }

    pub fn rate(&self, label: TestLabel) -> Option<f64> {
        let i = TestLabel::TABLE_ORDER.iter().position(|&t| t == label)?;
        self.rates[i]
    }

    /// Simulation settings for the cell with the default reps, reflections and resamples.
    pub fn config(&self) -> DesignConfig {
        let mut cfg = DesignConfig::new(self.n, self.p, self.rho, self.design);
        cfg.error_dist = self.error_dist;
        cfg
    }

    /// Skewness of the errors, if skew-normal.
    pub fn gamma(&self) -> Option<f64> {
        match self.error_dist {
            ErrorDist::SkewNormal(g) => Some(g),
            ErrorDist::StudentT4Scaled => None,
        }
    }
}

/// All cells of table `table` (1 to 5), upper panel first.
pub fn table_cells(table: u8) -> Result<Vec<ReferenceCell>> {
    let rows: &[Row; 18] = match table {
        1 => &TABLE_1,
        2 => &TABLE_2,
        3 => &TABLE_3,
        4 => &TABLE_4,
        5 => &TABLE_5,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "table must be 1-5, got {table}"
            )))
        }
    };
    Ok(rows
        .iter()
        .map(|&(block, p, rho, rates)| {
            let (n, design, error_dist) = match table {
                5 => (
                    400,
                    Design::D1,
                    ErrorDist::SkewNormal(if block == 0 { -0.667 } else { 0.667 }),
                ),
                t => {
                    let design = Design::ALL[usize::from(t) - 1];
                    (
                        if block == 0 { 400 } else { 30 },
                        design,
                        ErrorDist::StudentT4Scaled,
                    )
                }
            };
            ReferenceCell {
                table,
                n,
                p,
                rho,
                design,
                error_dist,
                rates,
            }
        })
        .collect())
}

/// Published value of `label` in the matching cell, if any.
pub fn reference_value(
    table: u8,
    n: usize,
    p: usize,
    rho: f64,
    gamma: Option<f64>,
    label: TestLabel,
) -> Option<f64> {
    table_cells(table)
        .ok()?
        .into_iter()
        .find(|c| c.n == n && c.p == p && (c.rho - rho).abs() < 1e-9 && c.gamma() == gamma)
        .and_then(|c| c.rate(label))
}

/// Cell filter such as `n=30,p=200,rho=0.5,gamma=-0.667`; absent keys match anything.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CellFilter {
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub rho: Option<f64>,
    pub gamma: Option<f64>,
}

impl CellFilter {
    pub fn parse(s: &str) -> Result<Self> {
        let mut f = CellFilter::default();
        let bad = |part: &str| Error::InvalidParameter(format!("bad cell filter term {part:?}"));
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad(part))?;
            let v = v.trim();
            match k.trim() {
                "n" => f.n = Some(v.parse().map_err(|_| bad(part))?),
                "p" => f.p = Some(v.parse().map_err(|_| bad(part))?),
                "rho" => f.rho = Some(v.parse().map_err(|_| bad(part))?),
                "gamma" => f.gamma = Some(v.parse().map_err(|_| bad(part))?),
                _ => return Err(bad(part)),
            }
        }
        Ok(f)
    }

    pub fn matches(&self, c: &ReferenceCell) -> bool {
        self.n.is_none_or(|n| n == c.n)
            && self.p.is_none_or(|p| p == c.p)
            && self.rho.is_none_or(|r| (r - c.rho).abs() < 1e-9)
            && self
                .gamma
                .is_none_or(|g| c.gamma().is_some_and(|cg| (cg - g).abs() < 1e-9))
    }
}

const TABLE_1: [Row; 18] = [
    row(
        0,
        200,
        0.0,
        [
            Some(0.045),
            Some(0.046),
            Some(0.032),
            Some(0.052),
            Some(0.042),
            Some(0.050),
            Some(0.041),
            Some(0.050),
            Some(0.040),
            Some(0.043),
        ],
    ),
    row(
        0,
        200,
        0.5,
        [
            Some(0.044),
            Some(0.038),
            Some(0.046),
            Some(0.057),
            Some(0.050),
            Some(0.048),
            Some(0.042),
            Some(0.061),
            Some(0.055),
            Some(0.046),
        ],
    ),
    row(
        0,
        200,
        0.9,
        [
            Some(0.047),
            Some(0.049),
            Some(0.052),
            Some(0.040),
            Some(0.052),
            Some(0.051),
            Some(0.075),
            Some(0.060),
            Some(0.068),
            Some(0.050),
        ],
    ),
    row(
        0,
        500,
        0.0,
        [
            Some(0.044),
            Some(0.054),
            Some(0.043),
            Some(0.032),
            Some(0.057),
            Some(0.042),
            Some(0.041),
            Some(0.051),
            Some(0.054),
            Some(0.061),
        ],
    ),
    row(
        0,
        500,
        0.5,
        [
            Some(0.043),
            Some(0.054),
            Some(0.034),
            Some(0.069),
            Some(0.051),
            Some(0.049),
            Some(0.038),
            Some(0.049),
            Some(0.054),
            Some(0.045),
        ],
    ),
    row(
        0,
        500,
        0.9,
        [
            Some(0.059),
            Some(0.051),
            Some(0.053),
            Some(0.046),
            Some(0.060),
            Some(0.050),
            Some(0.057),
            Some(0.059),
            Some(0.048),
            Some(0.049),
        ],
    ),
    row(
        0,
        1000,
        0.0,
        [
            Some(0.043),
            Some(0.042),
            Some(0.051),
            Some(0.063),
            Some(0.036),
            Some(0.060),
            Some(0.036),
            Some(0.053),
            Some(0.000),
            Some(0.000),
        ],
    ),
    row(
        0,
        1000,
        0.5,
        [
            Some(0.044),
            Some(0.063),
            Some(0.051),
            Some(0.052),
            Some(0.052),
            Some(0.057),
            Some(0.038),
            Some(0.052),
            Some(0.049),
            Some(0.054),
        ],
    ),
    row(
        0,
        1000,
        0.9,
        [
            Some(0.058),
            Some(0.057),
            Some(0.042),
            Some(0.052),
            Some(0.046),
            Some(0.040),
            Some(0.047),
            Some(0.041),
            Some(0.039),
            Some(0.051),
        ],
    ),
    row(
        1,
        200,
        0.0,
        [
            Some(0.094),
            Some(0.055),
            None,
            None,
            Some(0.111),
            Some(0.061),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        200,
        0.5,
        [
            Some(0.122),
            Some(0.056),
            None,
            None,
            Some(0.117),
            Some(0.048),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        200,
        0.9,
        [
            Some(0.128),
            Some(0.050),
            None,
            None,
            Some(0.153),
            Some(0.045),
            None,
            None,
            Some(0.048),
            None,
        ],
    ),
    row(
        1,
        500,
        0.0,
        [
            Some(0.114),
            Some(0.040),
            None,
            None,
            Some(0.124),
            Some(0.045),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        500,
        0.5,
        [
            Some(0.142),
            Some(0.044),
            None,
            None,
            Some(0.141),
            Some(0.049),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        500,
        0.9,
        [
            Some(0.167),
            Some(0.052),
            None,
            None,
            Some(0.173),
            Some(0.058),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.0,
        [
            Some(0.137),
            Some(0.049),
            None,
            None,
            Some(0.155),
            Some(0.045),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.5,
        [
            Some(0.170),
            Some(0.063),
            None,
            None,
            Some(0.174),
            Some(0.051),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.9,
        [
            Some(0.210),
            Some(0.049),
            None,
            None,
            Some(0.204),
            Some(0.060),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
];

const TABLE_2: [Row; 18] = [
    row(
        0,
        200,
        0.0,
        [
            Some(0.003),
            Some(0.009),
            Some(0.038),
            Some(0.037),
            Some(0.002),
            Some(0.009),
            Some(0.033),
            Some(0.053),
            Some(0.000),
            Some(0.049),
        ],
    ),
    row(
        0,
        200,
        0.5,
        [
            Some(0.005),
            Some(0.006),
            Some(0.031),
            Some(0.045),
            Some(0.006),
            Some(0.004),
            Some(0.045),
            Some(0.048),
            Some(0.001),
            Some(0.055),
        ],
    ),
    row(
        0,
        200,
        0.9,
        [
            Some(0.006),
            Some(0.009),
            Some(0.040),
            Some(0.054),
            Some(0.004),
            Some(0.011),
            Some(0.041),
            Some(0.038),
            Some(0.000),
            Some(0.060),
        ],
    ),
    row(
        0,
        500,
        0.0,
        [
            Some(0.000),
            Some(0.011),
            Some(0.035),
            Some(0.057),
            Some(0.003),
            Some(0.003),
            Some(0.043),
            Some(0.032),
            Some(0.002),
            Some(0.042),
        ],
    ),
    row(
        0,
        500,
        0.5,
        [
            Some(0.008),
            Some(0.005),
            Some(0.059),
            Some(0.063),
            Some(0.004),
            Some(0.008),
            Some(0.046),
            Some(0.037),
            Some(0.001),
            Some(0.047),
        ],
    ),
    row(
        0,
        500,
        0.9,
        [
            Some(0.005),
            Some(0.005),
            Some(0.039),
            Some(0.049),
            Some(0.005),
            Some(0.009),
            Some(0.052),
            Some(0.050),
            Some(0.000),
            Some(0.048),
        ],
    ),
    row(
        0,
        1000,
        0.0,
        [
            Some(0.002),
            Some(0.009),
            Some(0.025),
            Some(0.050),
            Some(0.004),
            Some(0.003),
            Some(0.032),
            Some(0.038),
            Some(0.000),
            Some(0.057),
        ],
    ),
    row(
        0,
        1000,
        0.5,
        [
            Some(0.004),
            Some(0.012),
            Some(0.040),
            Some(0.053),
            Some(0.003),
            Some(0.007),
            Some(0.031),
            Some(0.050),
            Some(0.000),
            Some(0.055),
        ],
    ),
    row(
        0,
        1000,
        0.9,
        [
            Some(0.007),
            Some(0.012),
            Some(0.047),
            Some(0.049),
            Some(0.003),
            Some(0.010),
            Some(0.041),
            Some(0.030),
            Some(0.001),
            Some(0.050),
        ],
    ),
    row(
        1,
        200,
        0.0,
        [
            Some(0.004),
            Some(0.034),
            None,
            None,
            Some(0.006),
            Some(0.044),
            None,
            None,
            Some(0.009),
            None,
        ],
    ),
    row(
        1,
        200,
        0.5,
        [
            Some(0.006),
            Some(0.020),
            None,
            None,
            Some(0.013),
            Some(0.046),
            None,
            None,
            Some(0.012),
            None,
        ],
    ),
    row(
        1,
        200,
        0.9,
        [
            Some(0.010),
            Some(0.023),
            None,
            None,
            Some(0.014),
            Some(0.033),
            None,
            None,
            Some(0.014),
            None,
        ],
    ),
    row(
        1,
        500,
        0.0,
        [
            Some(0.002),
            Some(0.021),
            None,
            None,
            Some(0.011),
            Some(0.042),
            None,
            None,
            Some(0.008),
            None,
        ],
    ),
    row(
        1,
        500,
        0.5,
        [
            Some(0.005),
            Some(0.028),
            None,
            None,
            Some(0.019),
            Some(0.040),
            None,
            None,
            Some(0.010),
            None,
        ],
    ),
    row(
        1,
        500,
        0.9,
        [
            Some(0.002),
            Some(0.037),
            None,
            None,
            Some(0.017),
            Some(0.045),
            None,
            None,
            Some(0.007),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.0,
        [
            Some(0.002),
            Some(0.035),
            None,
            None,
            Some(0.014),
            Some(0.037),
            None,
            None,
            Some(0.003),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.5,
        [
            Some(0.003),
            Some(0.022),
            None,
            None,
            Some(0.024),
            Some(0.032),
            None,
            None,
            Some(0.013),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.9,
        [
            Some(0.004),
            Some(0.024),
            None,
            None,
            Some(0.029),
            Some(0.042),
            None,
            None,
            Some(0.006),
            None,
        ],
    ),
];

const TABLE_3: [Row; 18] = [
    row(
        0,
        200,
        0.0,
        [
            Some(0.093),
            Some(0.099),
            Some(0.094),
            Some(0.099),
            Some(0.307),
            Some(0.333),
            Some(0.313),
            Some(0.340),
            Some(0.668),
            Some(0.667),
        ],
    ),
    row(
        0,
        200,
        0.5,
        [
            Some(0.099),
            Some(0.087),
            Some(0.094),
            Some(0.084),
            Some(0.135),
            Some(0.125),
            Some(0.141),
            Some(0.117),
            Some(0.377),
            Some(0.357),
        ],
    ),
    row(
        0,
        200,
        0.9,
        [
            Some(0.099),
            Some(0.119),
            Some(0.099),
            Some(0.099),
            Some(0.086),
            Some(0.114),
            Some(0.078),
            Some(0.083),
            Some(0.129),
            Some(0.144),
        ],
    ),
    row(
        0,
        500,
        0.0,
        [
            Some(0.103),
            Some(0.108),
            Some(0.094),
            Some(0.112),
            Some(0.755),
            Some(0.806),
            Some(0.773),
            Some(0.799),
            Some(0.919),
            Some(0.926),
        ],
    ),
    row(
        0,
        500,
        0.5,
        [
            Some(0.106),
            Some(0.107),
            Some(0.100),
            Some(0.097),
            Some(0.206),
            Some(0.216),
            Some(0.207),
            Some(0.237),
            Some(0.649),
            Some(0.653),
        ],
    ),
    row(
        0,
        500,
        0.9,
        [
            Some(0.116),
            Some(0.083),
            Some(0.111),
            Some(0.094),
            Some(0.092),
            Some(0.109),
            Some(0.092),
            Some(0.108),
            Some(0.215),
            Some(0.230),
        ],
    ),
    row(
        0,
        1000,
        0.0,
        [
            Some(0.095),
            Some(0.106),
            Some(0.094),
            Some(0.100),
            Some(0.985),
            Some(0.991),
            Some(0.991),
            Some(0.994),
            Some(0.000),
            Some(0.000),
        ],
    ),
    row(
        0,
        1000,
        0.5,
        [
            Some(0.099),
            Some(0.116),
            Some(0.094),
            Some(0.095),
            Some(0.447),
            Some(0.458),
            Some(0.461),
            Some(0.453),
            Some(0.848),
            Some(0.864),
        ],
    ),
    row(
        0,
        1000,
        0.9,
        [
            Some(0.103),
            Some(0.117),
            Some(0.111),
            Some(0.099),
            Some(0.113),
            Some(0.119),
            Some(0.129),
            Some(0.111),
            Some(0.365),
            Some(0.342),
        ],
    ),
    row(
        1,
        200,
        0.0,
        [
            Some(0.189),
            Some(0.107),
            None,
            None,
            Some(0.297),
            Some(0.202),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        200,
        0.5,
        [
            Some(0.190),
            Some(0.101),
            None,
            None,
            Some(0.231),
            Some(0.094),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        200,
        0.9,
        [
            Some(0.167),
            Some(0.086),
            None,
            None,
            Some(0.168),
            Some(0.075),
            None,
            None,
            Some(0.129),
            None,
        ],
    ),
    row(
        1,
        500,
        0.0,
        [
            Some(0.225),
            Some(0.092),
            None,
            None,
            Some(0.610),
            Some(0.411),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        500,
        0.5,
        [
            Some(0.253),
            Some(0.100),
            None,
            None,
            Some(0.298),
            Some(0.121),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        500,
        0.9,
        [
            Some(0.275),
            Some(0.099),
            None,
            None,
            Some(0.264),
            Some(0.068),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.0,
        [
            Some(0.242),
            Some(0.111),
            None,
            None,
            Some(0.896),
            Some(0.818),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.5,
        [
            Some(0.302),
            Some(0.091),
            None,
            None,
            Some(0.429),
            Some(0.209),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.9,
        [
            Some(0.350),
            Some(0.086),
            None,
            None,
            Some(0.315),
            Some(0.115),
            None,
            None,
            Some(0.000),
            None,
        ],
    ),
];

#[allow(clippy::approx_constant)]
const TABLE_4: [Row; 18] = [
    row(
        0,
        200,
        0.0,
        [
            Some(0.017),
            Some(0.033),
            Some(0.135),
            Some(0.133),
            Some(0.018),
            Some(0.034),
            Some(0.109),
            Some(0.124),
            Some(0.025),
            Some(0.394),
        ],
    ),
    row(
        0,
        200,
        0.5,
        [
            Some(0.026),
            Some(0.032),
            Some(0.136),
            Some(0.139),
            Some(0.010),
            Some(0.035),
            Some(0.147),
            Some(0.129),
            Some(0.006),
            Some(0.242),
        ],
    ),
    row(
        0,
        200,
        0.9,
        [
            Some(0.020),
            Some(0.027),
            Some(0.113),
            Some(0.122),
            Some(0.011),
            Some(0.034),
            Some(0.123),
            Some(0.111),
            Some(0.002),
            Some(0.130),
        ],
    ),
    row(
        0,
        500,
        0.0,
        [
            Some(0.018),
            Some(0.031),
            Some(0.099),
            Some(0.103),
            Some(0.024),
            Some(0.029),
            Some(0.107),
            Some(0.136),
            Some(0.143),
            Some(0.675),
        ],
    ),
    row(
        0,
        500,
        0.5,
        [
            Some(0.025),
            Some(0.038),
            Some(0.141),
            Some(0.136),
            Some(0.022),
            Some(0.034),
            Some(0.138),
            Some(0.156),
            Some(0.015),
            Some(0.367),
        ],
    ),
    row(
        0,
        500,
        0.9,
        [
            Some(0.026),
            Some(0.037),
            Some(0.117),
            Some(0.146),
            Some(0.015),
            Some(0.022),
            Some(0.137),
            Some(0.126),
            Some(0.002),
            Some(0.159),
        ],
    ),
    row(
        0,
        1000,
        0.0,
        [
            Some(0.022),
            Some(0.049),
            Some(0.091),
            Some(0.119),
            Some(0.020),
            Some(0.039),
            Some(0.082),
            Some(0.131),
            Some(0.397),
            Some(0.898),
        ],
    ),
    row(
        0,
        1000,
        0.5,
        [
            Some(0.022),
            Some(0.041),
            Some(0.153),
            Some(0.151),
            Some(0.014),
            Some(0.032),
            Some(0.126),
            Some(0.164),
            Some(0.087),
            Some(0.550),
        ],
    ),
    row(
        0,
        1000,
        0.9,
        [
            Some(0.030),
            Some(0.037),
            Some(0.135),
            Some(0.131),
            Some(0.021),
            Some(0.033),
            Some(0.140),
            Some(0.143),
            Some(0.003),
            Some(0.214),
        ],
    ),
    row(
        1,
        200,
        0.0,
        [
            Some(0.509),
            Some(0.828),
            None,
            None,
            Some(0.734),
            Some(0.925),
            None,
            None,
            Some(0.976),
            None,
        ],
    ),
    row(
        1,
        200,
        0.5,
        [
            Some(0.417),
            Some(0.709),
            None,
            None,
            Some(0.645),
            Some(0.846),
            None,
            None,
            Some(0.721),
            None,
        ],
    ),
    row(
        1,
        200,
        0.9,
        [
            Some(0.277),
            Some(0.486),
            None,
            None,
            Some(0.421),
            Some(0.571),
            None,
            None,
            Some(0.319),
            None,
        ],
    ),
    row(
        1,
        500,
        0.0,
        [
            Some(0.342),
            Some(0.813),
            None,
            None,
            Some(0.887),
            Some(0.982),
            None,
            None,
            Some(0.966),
            None,
        ],
    ),
    row(
        1,
        500,
        0.5,
        [
            Some(0.298),
            Some(0.701),
            None,
            None,
            Some(0.810),
            Some(0.937),
            None,
            None,
            Some(0.673),
            None,
        ],
    ),
    row(
        1,
        500,
        0.9,
        [
            Some(0.224),
            Some(0.499),
            None,
            None,
            Some(0.550),
            Some(0.693),
            None,
            None,
            Some(0.318),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.0,
        [
            Some(0.278),
            Some(0.802),
            None,
            None,
            Some(0.952),
            Some(0.996),
            None,
            None,
            Some(0.951),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.5,
        [
            Some(0.237),
            Some(0.687),
            None,
            None,
            Some(0.930),
            Some(0.980),
            None,
            None,
            Some(0.642),
            None,
        ],
    ),
    row(
        1,
        1000,
        0.9,
        [
            Some(0.156),
            Some(0.466),
            None,
            None,
            Some(0.653),
            Some(0.799),
            None,
            None,
            Some(0.296),
            None,
        ],
    ),
];

const TABLE_5: [Row; 18] = [
    row(
        0,
        200,
        0.0,
        [
            Some(0.116),
            Some(0.069),
            Some(0.104),
            Some(0.089),
            Some(0.086),
            Some(0.077),
            Some(0.082),
            Some(0.106),
            Some(0.082),
            Some(0.081),
        ],
    ),
    row(
        0,
        200,
        0.5,
        [
            Some(0.107),
            Some(0.083),
            Some(0.098),
            Some(0.063),
            Some(0.081),
            Some(0.061),
            Some(0.072),
            Some(0.083),
            Some(0.084),
            Some(0.073),
        ],
    ),
    row(
        0,
        200,
        0.9,
        [
            Some(0.069),
            Some(0.053),
            Some(0.075),
            Some(0.050),
            Some(0.056),
            Some(0.048),
            Some(0.057),
            Some(0.059),
            Some(0.070),
            Some(0.059),
        ],
    ),
    row(
        0,
        500,
        0.0,
        [
            Some(0.119),
            Some(0.087),
            Some(0.115),
            Some(0.093),
            Some(0.124),
            Some(0.084),
            Some(0.081),
            Some(0.135),
            Some(0.081),
            Some(0.098),
        ],
    ),
    row(
        0,
        500,
        0.5,
        [
            Some(0.120),
            Some(0.086),
            Some(0.097),
            Some(0.082),
            Some(0.102),
            Some(0.058),
            Some(0.080),
            Some(0.093),
            Some(0.074),
            Some(0.090),
        ],
    ),
    row(
        0,
        500,
        0.9,
        [
            Some(0.064),
            Some(0.058),
            Some(0.074),
            Some(0.071),
            Some(0.060),
            Some(0.056),
            Some(0.058),
            Some(0.059),
            Some(0.056),
            Some(0.048),
        ],
    ),
    row(
        0,
        1000,
        0.0,
        [
            Some(0.136),
            Some(0.087),
            Some(0.146),
            Some(0.093),
            Some(0.153),
            Some(0.091),
            Some(0.106),
            Some(0.136),
            Some(0.000),
            Some(0.000),
        ],
    ),
    row(
        0,
        1000,
        0.5,
        [
            Some(0.109),
            Some(0.075),
            Some(0.112),
            Some(0.093),
            Some(0.109),
            Some(0.104),
            Some(0.089),
            Some(0.121),
            Some(0.068),
            Some(0.085),
        ],
    ),
    row(
        0,
        1000,
        0.9,
        [
            Some(0.065),
            Some(0.058),
            Some(0.087),
            Some(0.056),
            Some(0.059),
            Some(0.065),
            Some(0.074),
            Some(0.067),
            Some(0.054),
            Some(0.052),
        ],
    ),
    row(
        1,
        200,
        0.0,
        [
            Some(0.031),
            Some(0.025),
            Some(0.034),
            Some(0.024),
            Some(0.017),
            Some(0.034),
            Some(0.032),
            Some(0.020),
            Some(0.043),
            Some(0.027),
        ],
    ),
    row(
        1,
        200,
        0.5,
        [
            Some(0.038),
            Some(0.034),
            Some(0.034),
            Some(0.031),
            Some(0.033),
            Some(0.040),
            Some(0.042),
            Some(0.042),
            Some(0.035),
            Some(0.036),
        ],
    ),
    row(
        1,
        200,
        0.9,
        [
            Some(0.042),
            Some(0.037),
            Some(0.050),
            Some(0.043),
            Some(0.045),
            Some(0.048),
            Some(0.034),
            Some(0.042),
            Some(0.045),
            Some(0.053),
        ],
    ),
    row(
        1,
        500,
        0.0,
        [
            Some(0.020),
            Some(0.019),
            Some(0.023),
            Some(0.033),
            Some(0.018),
            Some(0.024),
            Some(0.017),
            Some(0.024),
            Some(0.021),
            Some(0.019),
        ],
    ),
    row(
        1,
        500,
        0.5,
        [
            Some(0.033),
            Some(0.024),
            Some(0.037),
            Some(0.041),
            Some(0.026),
            Some(0.036),
            Some(0.027),
            Some(0.028),
            Some(0.023),
            Some(0.027),
        ],
    ),
    row(
        1,
        500,
        0.9,
        [
            Some(0.030),
            Some(0.037),
            Some(0.039),
            Some(0.042),
            Some(0.049),
            Some(0.048),
            Some(0.054),
            Some(0.050),
            Some(0.039),
            Some(0.047),
        ],
    ),
    row(
        1,
        1000,
        0.0,
        [
            Some(0.033),
            Some(0.025),
            Some(0.021),
            Some(0.030),
            Some(0.019),
            Some(0.028),
            Some(0.016),
            Some(0.027),
            Some(0.000),
            Some(0.000),
        ],
    ),
    row(
        1,
        1000,
        0.5,
        [
            Some(0.029),
            Some(0.036),
            Some(0.029),
            Some(0.021),
            Some(0.034),
            Some(0.031),
            Some(0.025),
            Some(0.028),
            Some(0.038),
            Some(0.034),
        ],
    ),
    row(
        1,
        1000,
        0.9,
        [
            Some(0.059),
            Some(0.042),
            Some(0.036),
            Some(0.048),
            Some(0.043),
            Some(0.052),
            Some(0.051),
            Some(0.041),
            Some(0.034),
            Some(0.046),
        ],
    ),
];
