use std::fs;
use std::sync::atomic::{AtomicUsize, Ordering};

use anyhow::{bail, Context, Result};
use momineq::bootstrap::{eb_test, eb_test_selected, BootstrapConfig};
use momineq::randomization::{
    randomization_test, randomization_test_selected, sample_reflections, CutoffSource,
    SelectionRule, TestOutcome,
};
use momineq::rng::substream;
use momineq::simulation::{run_cell_with_progress, CellResult, DesignConfig, TestLabel};
use momineq::statistics::{
    check_copositivity_sufficient, CopositivityCheck, DirectionSet, StatTag, StatisticSpec,
};
use momineq::tables::{reference_value, table_cells, CellFilter};
use momineq::{sample_moments, DataMatrix};
use serde::Serialize;

use crate::data::read_matrix;
use crate::output::{now_unix, rows_for, write_json, write_rows, ResultRow, RunManifest};
use crate::{Command, MethodArg, ReproduceArgs, SimulateArgs, StatisticArg, TestArgs};

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Test(args) => cmd_test(&args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Replay(args) => {
            let manifest = RunManifest::read(&args.manifest)?;
            match (manifest.command, args.out) {
                (Command::Simulate(mut a), out) => {
                    a.out = out.unwrap_or(a.out);
                    cmd_simulate(a)
                }
                (Command::Reproduce(mut a), out) => {
                    a.out = out.unwrap_or(a.out);
                    cmd_reproduce(a)
                }
                (Command::Test(mut a), out) => {
                    a.out = out.or(a.out);
                    cmd_test(&a)
                }
                (Command::Replay(_), _) => bail!("a manifest cannot record a replay"),
            }
        }
    }
}

#[derive(Serialize)]
struct StatisticReport {
    tag: StatTag,
    /// `null` when the statistic is infinite.
    value: Option<f64>,
    maximizer: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct Diagnostics {
    /// The existence condition fails for the observed data (statistic is infinite).
    condition_violated: bool,
    copositivity: CopositivityCheck,
    n_infinite_reflections: usize,
}

#[derive(Serialize)]
struct TestReport {
    method: MethodArg,
    statistic_name: String,
    n: usize,
    p: usize,
    statistic: StatisticReport,
    p_value: f64,
    p_count: usize,
    p_denominator: usize,
    critical_value: Option<f64>,
    alpha: f64,
    reject: bool,
    decision: &'static str,
    /// Reflections (sr) or bootstrap resamples (eb).
    draws: usize,
    /// Zero-based columns kept by the selection step.
    selected: Option<Vec<usize>>,
    cutoff: Option<f64>,
    diagnostics: Diagnostics,
}

fn load_spec(args: &TestArgs, p: usize) -> Result<(StatisticSpec, String)> {
    if let Some(path) = &args.directions {
        let dirs = read_matrix(path, false)?;
        let spec = StatisticSpec::Finite(DirectionSet::Custom(dirs));
        spec.validate(p)
            .with_context(|| format!("directions in {}", path.display()))?;
        return Ok((spec, format!("custom({})", path.display())));
    }
    Ok(match args.statistic {
        StatisticArg::Tmax => (StatisticSpec::t_max(), "tmax".into()),
        StatisticArg::TmaxIota => (StatisticSpec::t_max_iota(), "tmax-iota".into()),
        StatisticArg::Tplus => (StatisticSpec::t_plus(), "tplus".into()),
    })
}

fn cmd_test(args: &TestArgs) -> Result<()> {
    let rows = read_matrix(&args.data, args.header)?;
    let x = DataMatrix::from_rows(&rows).with_context(|| format!("{}", args.data.display()))?;
    let (spec, name) = load_spec(args, x.p())?;
    let boot_seed = substream(args.seed, 2);
    let outcome: TestOutcome = match args.method {
        MethodArg::Sr => {
            let plan = sample_reflections(x.n(), args.reflections, substream(args.seed, 1))?;
            if args.select {
                let source = CutoffSource::EbPerReflection {
                    beta: args.beta,
                    resamples: args.bootstrap,
                    seed: boot_seed,
                };
                randomization_test_selected(
                    &x,
                    &spec,
                    &SelectionRule::TCutoff(source),
                    &plan,
                    args.alpha,
                )?
            } else {
                randomization_test(&x, &spec, &plan, args.alpha)?
            }
        }
        MethodArg::Eb => {
            let StatisticSpec::Finite(set) = &spec else {
                bail!("the bootstrap test needs a finite direction set (tmax, tmax-iota or --directions)");
            };
            let cfg = BootstrapConfig {
                resamples: args.bootstrap,
                alpha: args.alpha,
                beta: if args.select { args.beta } else { 0.0 },
                seed: boot_seed,
            };
            if args.select {
                eb_test_selected(&x, set, &cfg)?
            } else {
                eb_test(&x, set, &cfg)?
            }
        }
    };
    let report = TestReport {
        method: args.method,
        statistic_name: name,
        n: x.n(),
        p: x.p(),
        statistic: StatisticReport {
            tag: outcome.statistic.tag,
            value: outcome
                .statistic
                .value
                .is_finite()
                .then_some(outcome.statistic.value),
            maximizer: outcome.statistic.maximizer.clone(),
        },
        p_value: outcome.p_value,
        p_count: outcome.p_count,
        p_denominator: outcome.p_denominator,
        critical_value: outcome.critical_value,
        alpha: outcome.alpha,
        reject: outcome.reject,
        decision: if outcome.reject {
            "reject H0"
        } else {
            "no rejection"
        },
        draws: outcome.m,
        selected: outcome.selected.clone(),
        cutoff: outcome.cutoff.filter(|c| c.is_finite()),
        diagnostics: Diagnostics {
            condition_violated: outcome.statistic.condition_violated,
            copositivity: check_copositivity_sufficient(&sample_moments(&x)),
            n_infinite_reflections: outcome.n_infinite_reflections,
        },
    };
    let text = serde_json::to_string_pretty(&report)?;
    println!("{text}");
    if let Some(out) = &args.out {
        if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(out, text + "\n").with_context(|| format!("cannot write {}", out.display()))?;
    }
    Ok(())
}

fn parse_tests(list: &str) -> Result<Vec<TestLabel>> {
    let tests = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<TestLabel>()
                .with_context(|| format!("test label {s:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    if tests.is_empty() {
        bail!("no tests given");
    }
    Ok(tests)
}

fn run_with_progress(cfg: &DesignConfig, tests: &[TestLabel], tag: &str) -> Result<CellResult> {
    let done = AtomicUsize::new(0);
    let step = (cfg.reps / 20).max(1);
    let result = run_cell_with_progress(cfg, tests, |_| {
        let k = done.fetch_add(1, Ordering::Relaxed) + 1;
        if k.is_multiple_of(step) || k == cfg.reps {
            eprintln!("[{tag}] {k}/{} reps", cfg.reps);
        }
    })?;
    Ok(result)
}

fn timings(cell: &CellResult, tag: &str) -> Vec<(String, f64)> {
    cell.tests
        .iter()
        .zip(&cell.mean_seconds)
        .map(|(t, &s)| (format!("{tag}/{}", t.label), s))
        .collect()
}

fn finish(
    out: &std::path::Path,
    command: Command,
    started: f64,
    rows: &[ResultRow],
    cells: &[CellResult],
    timings: Vec<(String, f64)>,
) -> Result<()> {
    let csv_path = out.join("results.csv");
    let json_path = out.join("results.json");
    write_rows(&csv_path, rows)?;
    write_json(
        &json_path,
        &cells
            .iter()
            .map(|c| (&c.config, &c.tests))
            .collect::<Vec<_>>(),
    )?;
    let mut manifest = RunManifest::new(command, started);
    manifest.outputs = vec![csv_path.clone(), json_path];
    manifest.timings = timings;
    write_json(&out.join("manifest.json"), &manifest)?;
    eprintln!("wrote {}", csv_path.display());
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let started = now_unix();
    let tests = parse_tests(&args.tests)?;
    let mut cfg = DesignConfig::new(args.n, args.p, args.rho, args.design.parse()?);
    cfg.error_dist = args.dist.parse()?;
    cfg.reps = args.reps;
    cfg.m = args.reflections;
    cfg.b = args.bootstrap;
    cfg.alpha = args.alpha;
    cfg.seed = args.seed;
    cfg.selection = args.selection;
    cfg.validate()?;
    cfg.mu()?;
    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;

    let cell = run_with_progress(&cfg, &tests, "cell")?;
    let gamma = match cfg.error_dist {
        momineq::ErrorDist::SkewNormal(g) => Some(g),
        momineq::ErrorDist::StudentT4Scaled => None,
    };
    let table = match (cfg.design, gamma) {
        (momineq::Design::D1, Some(_)) => 5,
        (d, None) => d.to_string().parse::<u8>().unwrap_or(0),
        _ => 0,
    };
    let rows = rows_for(&cell, |label| {
        if (args.alpha - 0.05).abs() > 1e-12 {
            return None;
        }
        reference_value(table, cfg.n, cfg.p, cfg.rho, gamma, label)
    });
    for r in &rows {
        eprintln!(
            "{}{}: {:.3}",
            r.test,
            if r.sel { "-sel" } else { "" },
            r.rejection_rate
        );
    }
    let t = timings(&cell, "cell");
    let out = args.out.clone();
    finish(&out, Command::Simulate(args), started, &rows, &[cell], t)
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<()> {
    let started = now_unix();
    let filter = match &args.cells {
        Some(s) => CellFilter::parse(s)?,
        None => CellFilter::default(),
    };
    let cells: Vec<_> = table_cells(args.table)?
        .into_iter()
        .filter(|c| filter.matches(c))
        .collect();
    if cells.is_empty() {
        bail!("no cells of table {} match the filter", args.table);
    }
    if args.reps == 0 {
        bail!("--reps must be positive");
    }
    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut all_timings = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let mut cfg = cell.config();
        cfg.reps = args.reps;
        cfg.m = args.reflections;
        cfg.b = args.bootstrap;
        cfg.seed = substream(args.seed, i as u64);
        cfg.selection = args.selection;
        let tag = format!("n={},p={},rho={}", cfg.n, cfg.p, cfg.rho);
        let tag = match cell.gamma() {
            Some(g) => format!("{tag},gamma={g}"),
            None => tag,
        };
        eprintln!("cell {}/{}: {tag}", i + 1, cells.len());
        let res = run_with_progress(&cfg, &cell.tests(), &tag)?;
        rows.extend(rows_for(&res, |label| cell.rate(label)));
        all_timings.extend(timings(&res, &tag));
        results.push(res);
    }
    let out = args.out.clone();
    finish(
        &out,
        Command::Reproduce(args),
        started,
        &rows,
        &results,
        all_timings,
    )
}
