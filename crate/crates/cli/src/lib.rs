//! Command implementations behind the `pathbench` binary.

pub mod config;

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use anyhow::{bail, Context, Result};
use pathbench::benchmark::{
    redacted, results_csv, run_planner, run_trials, summarize, table1_csv, table1_queries,
    table1_suite, EnvSource, Summary, WriteOptions,
};
use pathbench::environment::RandomEnvParams;
use pathbench::render::{SvgScene, PSO_COLOR, RRT_COLOR};
use pathbench::{PlanResult, PlannerKind, Query};
use serde::Serialize;

use config::{load_environment, resolve_seed, EnvironmentSpec, ScenarioConfig, SEED_ENV_VAR};

/// Process exit status of a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Infeasible => 1,
        }
    }
}

/// Exit code for commands that failed before producing results.
pub const INVALID: i32 = 2;

/// Flags shared by `plan`, `bench` and `table1`; each overrides the config.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub no_timing: bool,
}

struct Prepared {
    config: ScenarioConfig,
    seed: u64,
    out: PathBuf,
    opts: WriteOptions,
    jobs: usize,
}

fn prepare(o: &Overrides) -> Result<Prepared> {
    let mut config = match &o.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(t) = o.trials {
        config.trials = t;
    }
    config.validate()?;
    let env_seed = std::env::var(SEED_ENV_VAR).ok();
    let seed = resolve_seed(config.base_seed, env_seed.as_deref(), o.seed)?;
    let out = o.out.clone().unwrap_or_else(|| config.output.clone());
    std::fs::create_dir_all(&out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    Ok(Prepared {
        config,
        seed,
        out,
        opts: WriteOptions {
            redact_timing: o.no_timing,
        },
        jobs: o.jobs.max(1),
    })
}

fn write_file(dir: &FsPath, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn color(kind: PlannerKind) -> &'static str {
    match kind {
        PlannerKind::RrtStar => RRT_COLOR,
        PlannerKind::Pso => PSO_COLOR,
    }
}

fn random_default() -> EnvironmentSpec {
    EnvironmentSpec::Random(RandomEnvParams::default())
}

/// One planning call: writes `results.csv`, `result.json` and `plan.svg`.
pub fn cmd_plan(o: &Overrides, planner: PlannerKind, stdout: &mut dyn Write) -> Result<Status> {
    let p = prepare(o)?;
    let scenario = p.config.scenario(&random_default())?;
    let env = scenario.source.build(p.seed, &scenario.query)?;
    let params = p.config.planner_params(planner, p.seed);
    let mut result = run_planner(&env, &scenario.query, &params)?;
    if p.opts.redact_timing {
        result.elapsed_s = 0.0;
    }
    write_file(
        &p.out,
        "results.csv",
        &results_csv([(None, &result)], p.opts),
    )?;
    write_file(
        &p.out,
        "result.json",
        &(serde_json::to_string_pretty(&result)? + "\n"),
    )?;
    let mut scene = SvgScene::new(&env).with_query(scenario.query);
    if let Some(path) = result.display_path() {
        scene = scene.with_path(path.clone(), color(planner));
    }
    write_file(&p.out, "plan.svg", &scene.render())?;
    writeln!(
        stdout,
        "{planner} seed {}: feasible={} length={:.6} iterations={} closest_approach={:.6} elapsed_s={:.6}",
        p.seed, result.feasible, result.length, result.iterations_used, result.closest_approach, result.elapsed_s
    )?;
    writeln!(stdout, "wrote {}", p.out.display())?;
    Ok(if result.feasible {
        Status::Ok
    } else {
        Status::Infeasible
    })
}

#[derive(Serialize)]
struct BenchSummary<'a> {
    query: Query,
    trials: usize,
    base_seed: u64,
    environment: &'a str,
    planners: Vec<Summary>,
}

/// Multi-seed trials for every configured planner: writes `results.csv`
/// and `summary.json`.
pub fn cmd_bench(o: &Overrides, stdout: &mut dyn Write) -> Result<Status> {
    let p = prepare(o)?;
    let scenario = p.config.scenario(&random_default())?;
    let mut all: Vec<PlanResult> = Vec::new();
    let mut summaries = Vec::new();
    for &kind in &p.config.planners {
        let params = p.config.planner_params(kind, p.seed);
        let mut stats = run_trials(
            &scenario.source,
            &scenario.query,
            &params,
            p.config.trials,
            p.seed,
            p.jobs,
        )?;
        if p.opts.redact_timing {
            stats = redacted(&stats);
        }
        let summary = summarize(&stats)?;
        match &summary.length {
            Some(l) => writeln!(
                stdout,
                "{kind}: feasible {}/{} mean_length={:.4} std_length={:.4} median_time={:.6}s",
                summary.feasible_runs, summary.runs, l.mean, l.std, summary.time.median
            )?,
            None => writeln!(stdout, "{kind}: no feasible runs out of {}", summary.runs)?,
        }
        summaries.push(summary);
        all.extend(stats.results);
    }
    write_file(
        &p.out,
        "results.csv",
        &results_csv(all.iter().map(|r| (None, r)), p.opts),
    )?;
    let environment = match (&p.config.environment, &scenario.source) {
        (Some(EnvironmentSpec::Preset(name)), _) => name.as_str(),
        (_, EnvSource::Random { .. }) => "random",
        _ => "fixed",
    };
    let doc = BenchSummary {
        query: scenario.query,
        trials: p.config.trials,
        base_seed: p.seed,
        environment,
        planners: summaries,
    };
    write_file(
        &p.out,
        "summary.json",
        &(serde_json::to_string_pretty(&doc)? + "\n"),
    )?;
    writeln!(stdout, "wrote {}", p.out.display())?;
    Ok(Status::Ok)
}

/// The ten fixed cases against the irregular preset (or the configured
/// fixed environment): writes `table1.csv` and `results.csv`.
pub fn cmd_table1(o: &Overrides, stdout: &mut dyn Write) -> Result<Status> {
    let p = prepare(o)?;
    let scenario = p
        .config
        .scenario(&EnvironmentSpec::Preset("irregular-a".into()))?;
    let EnvSource::Fixed(env) = &scenario.source else {
        bail!("table1 needs a fixed environment (preset, file or inline), not a random one");
    };
    let planners: Vec<_> = p
        .config
        .planners
        .iter()
        .map(|&k| p.config.planner_params(k, p.seed))
        .collect();
    let mut rows = table1_suite(env, &table1_queries(), &planners, p.seed, p.jobs);
    if p.opts.redact_timing {
        rows.iter_mut().for_each(|r| r.result.elapsed_s = 0.0);
    }
    for r in &rows {
        let note = r
            .result
            .error
            .as_deref()
            .map(|e| format!(" ({e})"))
            .unwrap_or_default();
        writeln!(
            stdout,
            "case {:>2} {:<7} {} -> {}: feasible={} length={:.4} straight={:.4}{note}",
            r.case_id, r.planner, r.start, r.target, r.feasible, r.length, r.straight_line
        )?;
    }
    let feasible = rows.iter().filter(|r| r.feasible).count();
    writeln!(stdout, "{feasible}/{} runs feasible", rows.len())?;
    write_file(&p.out, "table1.csv", &table1_csv(&rows))?;
    write_file(
        &p.out,
        "results.csv",
        &results_csv(rows.iter().map(|r| (Some(r.case_id), &r.result)), p.opts),
    )?;
    writeln!(stdout, "wrote {}", p.out.display())?;
    Ok(Status::Ok)
}

/// Draws an environment file plus any result files (as written by `plan`)
/// into `render.svg`.
pub fn cmd_render(
    env_file: &FsPath,
    results: &[PathBuf],
    out: &FsPath,
    stdout: &mut dyn Write,
) -> Result<Status> {
    let (env, query) = load_environment(env_file)?;
    let mut loaded = Vec::new();
    for path in results {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading result {}", path.display()))?;
        let r: PlanResult = serde_json::from_str(&text)
            .with_context(|| format!("parsing result {}", path.display()))?;
        loaded.push(r);
    }
    let query = query.or_else(|| {
        loaded
            .iter()
            .find_map(|r| r.display_path().map(|p| Query::new(p.first(), p.last())))
    });
    let mut scene = SvgScene::new(&env);
    if let Some(q) = query {
        scene = scene.with_query(q);
    }
    for r in &loaded {
        if let Some(path) = r.display_path() {
            scene = scene.with_path(path.clone(), color(r.planner));
        }
    }
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    let path = write_file(out, "render.svg", &scene.render())?;
    writeln!(stdout, "wrote {}", path.display())?;
    Ok(Status::Ok)
}
