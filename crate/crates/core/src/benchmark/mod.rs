//! Multi-seed trials, descriptive statistics, the ten-case suite, and the
//! tabular/structured result writers.

mod oracle;

pub use oracle::{grid_oracle, OracleOutcome};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::environment::{generate_random_env, Environment, Query, RandomEnvParams};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::pso::plan_pso;
pub use crate::result::{PlanResult, PlannerKind, PlannerParams};
use crate::rrtstar::plan_rrt_star;

/// Width of the runtime histogram bins, in seconds.
pub const TIME_BIN_WIDTH: f64 = 0.1;

/// Start/target pairs of the ten-case suite.
pub const TABLE1_CASES: [(usize, Point2, Point2); 10] = [
    (1, Point2::new(12.0, -35.0), Point2::new(-15.0, 10.0)),
    (2, Point2::new(10.0, -30.0), Point2::new(-20.0, 8.0)),
    (3, Point2::new(25.0, -35.0), Point2::new(-7.0, 10.0)),
    (4, Point2::new(5.0, -28.0), Point2::new(10.0, 13.0)),
    (5, Point2::new(0.0, -32.0), Point2::new(12.0, 10.0)),
    (6, Point2::new(-2.0, -33.0), Point2::new(13.0, 15.0)),
    (7, Point2::new(-10.0, -30.0), Point2::new(20.0, 10.0)),
    (8, Point2::new(25.0, 8.0), Point2::new(-12.0, -25.0)),
    (9, Point2::new(-38.0, -10.0), Point2::new(32.0, -10.0)),
    (10, Point2::new(33.0, -7.0), Point2::new(-20.0, -13.0)),
];

pub fn table1_queries() -> Vec<(usize, Query)> {
    TABLE1_CASES
        .iter()
        .map(|&(id, s, t)| (id, Query::new(s, t)))
        .collect()
}

/// Runs one planning call with the given parameter snapshot.
pub fn run_planner(env: &Environment, query: &Query, params: &PlannerParams) -> Result<PlanResult> {
    match params {
        PlannerParams::RrtStar(p) => plan_rrt_star(env, query, p),
        PlannerParams::Pso(p) => plan_pso(env, query, p),
    }
}

fn run_or_record(env: &Environment, query: &Query, params: &PlannerParams) -> PlanResult {
    run_planner(env, query, params)
        .unwrap_or_else(|e| PlanResult::errored(params, query.straight_line(), e.to_string()))
}

/// Where each trial's environment comes from.
#[derive(Clone, Debug)]
pub enum EnvSource {
    Fixed(Environment),
    /// A fresh random environment per trial, seeded with the trial seed.
    Random {
        params: RandomEnvParams,
        inflation: f64,
    },
}

impl EnvSource {
    pub fn build(&self, seed: u64, query: &Query) -> Result<Environment> {
        match self {
            EnvSource::Fixed(env) => Ok(env.clone()),
            EnvSource::Random { params, inflation } => {
                generate_random_env(seed, params, query)?.with_inflation(*inflation)
            }
        }
    }
}

/// Maps `f` over `items`, on `jobs` worker threads when `jobs > 1`; output
/// order always matches input order.
fn ordered_map<T: Sync, R: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// Runs `n_trials` independent trials with seeds `base_seed .. base_seed + n_trials`.
///
/// The same seed drives the trial's environment (for random sources) and the
/// planner. A trial that fails to set up is recorded as infeasible.
pub fn run_trials(
    source: &EnvSource,
    query: &Query,
    params: &PlannerParams,
    n_trials: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<TrialStats> {
    if n_trials == 0 {
        return Err(Error::InvalidParams("n_trials must be >= 1".into()));
    }
    let seeds: Vec<u64> = (0..n_trials as u64).map(|i| base_seed + i).collect();
    let results = ordered_map(&seeds, jobs, |&seed| {
        let params = params.with_seed(seed);
        match source.build(seed, query) {
            Ok(env) => run_or_record(&env, query, &params),
            Err(e) => PlanResult::errored(&params, query.straight_line(), e.to_string()),
        }
    });
    Ok(TrialStats::new(results))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub mean: f64,
    /// Population standard deviation (divisor n).
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub median: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeStats {
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    pub histogram: Vec<HistogramBin>,
}

/// Report record produced by [`summarize`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub planner: Option<PlannerKind>,
    pub runs: usize,
    pub feasible_runs: usize,
    pub feasibility_rate: f64,
    pub no_feasible_runs: bool,
    pub length: Option<LengthStats>,
    pub time: TimeStats,
}

/// Results of a batch of trials. All statistics are computed from
/// `results` on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub results: Vec<PlanResult>,
}

impl TrialStats {
    /// Sorts by seed so aggregation never depends on completion order.
    pub fn new(mut results: Vec<PlanResult>) -> Self {
        results.sort_by_key(|r| (r.seed, r.planner));
        Self { results }
    }

    pub fn feasible_lengths(&self) -> Vec<f64> {
        self.results
            .iter()
            .filter(|r| r.feasible)
            .map(|r| r.length)
            .collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.elapsed_s).collect()
    }

    pub fn feasibility_rate(&self) -> f64 {
        if self.results.is_empty() {
            return 0.0;
        }
        self.feasible_lengths().len() as f64 / self.results.len() as f64
    }

    pub fn mean_length(&self) -> Option<f64> {
        mean(&self.feasible_lengths())
    }

    pub fn std_length(&self) -> Option<f64> {
        population_std(&self.feasible_lengths())
    }

    pub fn mean_time(&self) -> Option<f64> {
        mean(&self.times())
    }

    pub fn median_time(&self) -> Option<f64> {
        median(&self.times())
    }

    pub fn time_histogram(&self) -> Vec<HistogramBin> {
        histogram(&self.times(), TIME_BIN_WIDTH)
    }
}

pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

pub fn population_std(values: &[f64]) -> Option<f64> {
    let m = mean(values)?;
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64;
    Some(var.sqrt())
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Fixed-width histogram starting at zero. Bin `k` covers
/// `[k * width, (k + 1) * width)`; there are always at least one bin and
/// enough bins to hold the maximum.
pub fn histogram(values: &[f64], width: f64) -> Vec<HistogramBin> {
    let max = values.iter().copied().fold(0.0_f64, f64::max);
    let n_bins = (max / width).floor() as usize + 1;
    let mut bins: Vec<HistogramBin> = (0..n_bins)
        .map(|k| HistogramBin {
            lo: k as f64 * width,
            hi: (k + 1) as f64 * width,
            count: 0,
        })
        .collect();
    for &v in values {
        let k = ((v.max(0.0) / width).floor() as usize).min(n_bins - 1);
        bins[k].count += 1;
    }
    bins
}

/// Descriptive statistics over a batch; length statistics cover feasible
/// runs only.
pub fn summarize(stats: &TrialStats) -> Result<Summary> {
    if stats.results.is_empty() {
        return Err(Error::InvalidParams(
            "cannot summarize an empty batch".into(),
        ));
    }
    let lengths = stats.feasible_lengths();
    let times = stats.times();
    let first = stats.results[0].planner;
    let planner = stats
        .results
        .iter()
        .all(|r| r.planner == first)
        .then_some(first);
    let length = (!lengths.is_empty()).then(|| LengthStats {
        mean: mean(&lengths).unwrap(),
        std: population_std(&lengths).unwrap(),
        min: lengths.iter().copied().fold(f64::INFINITY, f64::min),
        max: lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        median: median(&lengths).unwrap(),
    });
    Ok(Summary {
        planner,
        runs: stats.results.len(),
        feasible_runs: lengths.len(),
        feasibility_rate: stats.feasibility_rate(),
        no_feasible_runs: lengths.is_empty(),
        length,
        time: TimeStats {
            mean: mean(&times).unwrap(),
            median: median(&times).unwrap(),
            min: times.iter().copied().fold(f64::INFINITY, f64::min),
            max: times.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            histogram: stats.time_histogram(),
        },
    })
}

/// One (case, planner) entry of the ten-case suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseRow {
    pub case_id: usize,
    pub start: Point2,
    pub target: Point2,
    pub planner: PlannerKind,
    pub feasible: bool,
    pub length: f64,
    pub straight_line: f64,
    pub result: PlanResult,
}

/// Runs every planner on every case, seeding case `k` with `seed + k`.
/// Rows come back in case order, planners in the order given.
pub fn table1_suite(
    env: &Environment,
    cases: &[(usize, Query)],
    planners: &[PlannerParams],
    seed: u64,
    jobs: usize,
) -> Vec<CaseRow> {
    let work: Vec<(usize, Query, &PlannerParams)> = cases
        .iter()
        .flat_map(|&(id, q)| planners.iter().map(move |p| (id, q, p)))
        .collect();
    ordered_map(&work, jobs, |&(case_id, query, params)| {
        let result = run_or_record(env, &query, &params.with_seed(seed + case_id as u64));
        CaseRow {
            case_id,
            start: query.start,
            target: query.target,
            planner: result.planner,
            feasible: result.feasible,
            length: result.length,
            straight_line: query.straight_line(),
            result,
        }
    })
}

/// Options shared by the text writers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WriteOptions {
    /// Write every elapsed time as zero so outputs are byte-reproducible.
    pub redact_timing: bool,
}

pub const RESULTS_HEADER: &str =
    "planner,seed,case_id,feasible,length,elapsed_s,iterations_used,closest_approach";

/// Comma-separated results table, one record per run, six decimals.
pub fn results_csv<'a>(
    rows: impl IntoIterator<Item = (Option<usize>, &'a PlanResult)>,
    opts: WriteOptions,
) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for (case_id, r) in rows {
        let elapsed = if opts.redact_timing { 0.0 } else { r.elapsed_s };
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{},{:.6}",
            r.planner,
            r.seed,
            case_id.map(|c| c.to_string()).unwrap_or_default(),
            r.feasible,
            r.length,
            elapsed,
            r.iterations_used,
            r.closest_approach,
        );
    }
    out
}

pub const TABLE1_HEADER: &str =
    "case_id,planner,start_x,start_y,target_x,target_y,straight_line,feasible,length";

pub fn table1_csv(rows: &[CaseRow]) -> String {
    let mut out = String::from(TABLE1_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{:.6}",
            r.case_id,
            r.planner,
            r.start.x,
            r.start.y,
            r.target.x,
            r.target.y,
            r.straight_line,
            r.feasible,
            r.length
        );
    }
    out
}

/// Copy of `stats` with every elapsed time zeroed.
pub fn redacted(stats: &TrialStats) -> TrialStats {
    TrialStats {
        results: stats
            .results
            .iter()
            .map(|r| PlanResult {
                elapsed_s: 0.0,
                ..r.clone()
            })
            .collect(),
    }
}
