//! Exact finite-sample tests of many moment inequalities `H0: mu <= 0` based on
//! sign-flip (reflection) randomization, with an empirical-bootstrap comparator
//! and a Monte Carlo engine for simulation designs.

pub mod bootstrap;
pub mod error;
pub mod moments;
pub mod nnls;
pub mod randomization;
pub mod rng;
pub mod simulation;
pub mod statistics;
pub mod tables;

pub use bootstrap::{
    eb_critical_value, eb_selection_cutoff, eb_test, eb_test_selected, BootstrapConfig,
};
pub use error::{Error, Result};
pub use moments::{quadratic_form, sample_moments, t_values, DataMatrix, SampleMoments};
pub use nnls::{nnls, nnls_gram, NnlsSolution};
pub use randomization::{
    apply_reflection, randomization_test, randomization_test_selected, reflected_statistics,
    sample_reflections, CutoffSource, ReflectionPlan, SelectionRule, SignVector, TestOutcome,
};
pub use simulation::{
    ar1_factor, density_curve, draw_errors, generate_dataset, generate_design_mu, run_cell,
    skew_normal_params, CellResult, Design, DesignConfig, ErrorDist, TestLabel,
};
pub use statistics::{
    check_copositivity_sufficient, evaluate, evaluate_finite, evaluate_t_plus, t_star_transform,
    CopositivityCheck, DirectionSet, Evaluator, StatTag, StatValue, StatisticSpec,
};
pub use tables::{reference_value, table_cells, CellFilter, ReferenceCell};
