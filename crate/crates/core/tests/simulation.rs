use momineq::simulation::{run_cell, Design, DesignConfig, ErrorDist, SelectionMode, TestLabel};

fn labels(list: &str) -> Vec<TestLabel> {
    list.split(',').map(|s| s.parse().unwrap()).collect()
}

fn small(design: Design) -> DesignConfig {
    let mut cfg = DesignConfig::new(30, 20, 0.0, design);
    cfg.reps = 40;
    cfg.m = 100;
    cfg.b = 100;
    cfg.seed = 21;
    cfg
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cfg = small(Design::D4);
    let tests = labels("sr-tmax,sr-tplus,eb-tmax-iota,sr-tmax-sel,eb-tmax-sel");
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| run_cell(&cfg, &tests).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert_eq!(a.tests, b.tests);
    assert_eq!(a.config, b.config);
}

#[test]
fn power_design_rejects_more_than_null() {
    let tests = labels("sr-tmax,sr-tmax-iota,sr-tplus,eb-tmax");
    let null = run_cell(&small(Design::D1), &tests).unwrap();
    let alt = run_cell(&small(Design::D3), &tests).unwrap();
    for t in &tests {
        assert!(alt.rate(*t).unwrap() >= null.rate(*t).unwrap(), "{t}");
    }
}

#[test]
fn fixed_cutoff_mode_runs() {
    let mut cfg = small(Design::D2);
    cfg.selection = SelectionMode::FixedCutoff;
    let res = run_cell(&cfg, &labels("sr-tmax-sel")).unwrap();
    assert_eq!(res.tests[0].n_errors, 0);
    assert!(res.tests[0].mean_selected.unwrap() < 20.0);
}

#[test]
fn selection_modes_agree_on_observed_columns() {
    let mut cfg = small(Design::D2);
    let mut kept = Vec::new();
    for mode in ["per-reflection", "fixed-cutoff", "observed-set"] {
        cfg.selection = mode.parse().unwrap();
        assert_eq!(cfg.selection.to_string(), mode);
        let res = run_cell(&cfg, &labels("sr-tmax-sel")).unwrap();
        assert_eq!(res.tests[0].n_errors, 0);
        kept.push(res.tests[0].mean_selected.unwrap());
    }
    assert!(kept.windows(2).all(|w| w[0] == w[1]), "{kept:?}");
    assert!("sometimes".parse::<SelectionMode>().is_err());
}

#[test]
fn errors_are_recorded_not_raised() {
    let mut cfg = small(Design::D1);
    cfg.n = 3;
    cfg.m = 10;
    cfg.reps = 5;
    // Three observations admit only four distinct reflections.
    let res = run_cell(&cfg, &labels("sr-tmax,eb-tmax")).unwrap();
    assert_eq!(res.tests[0].n_errors, 5);
    assert_eq!(res.tests[0].rejections, 0);
    assert!(res.tests[0]
        .first_error
        .as_deref()
        .unwrap()
        .contains("reflection"));
    assert_eq!(res.tests[1].n_errors, 0);
}

#[test]
fn invalid_configurations_fail_fast() {
    let mut cfg = small(Design::D1);
    cfg.rho = 1.5;
    assert!(run_cell(&cfg, &labels("sr-tmax")).is_err());
    let mut cfg = small(Design::D2);
    cfg.n = 50;
    assert!(run_cell(&cfg, &labels("sr-tmax")).is_err());
    cfg.mu = Some(vec![0.0; 20]);
    assert!(run_cell(&cfg, &labels("sr-tmax")).is_ok());
    let mut cfg = small(Design::D1);
    cfg.error_dist = ErrorDist::SkewNormal(1.2);
    assert!(run_cell(&cfg, &labels("sr-tmax")).is_err());
    assert!(run_cell(&small(Design::D1), &[]).is_err());
}
