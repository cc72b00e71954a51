//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::{Path as FsPath, PathBuf};
use std::process::Command;
use std::time::Instant;

use pathbench::audit::{audit_pso, audit_rrt_star};
use pathbench::benchmark::{
    grid_oracle, run_trials, table1_queries, table1_suite, EnvSource, OracleOutcome, PlannerParams,
    TrialStats,
};
use pathbench::environment::{generate_random_env, irregular_preset, Environment, RandomEnvParams};
use pathbench::geometry::{segment_circle_collides, segment_polygon_collides, Point2, Segment};
use pathbench::{plan_pso, plan_rrt_star, PlannerKind, PsoParams, Query, RrtParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn trend_query() -> Query {
    Query::new(Point2::new(20.0, -15.0), Point2::new(-25.0, 15.0))
}

fn random_env(seed: u64) -> Environment {
    generate_random_env(seed, &RandomEnvParams::default(), &trend_query())
        .expect("default generator succeeds")
}

/// Runs `f` over `items` on all cores, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

const TREND_SEED: u64 = 1000;
const TREND_TRIALS: usize = 50;

fn trend_stats() -> (TrialStats, TrialStats) {
    let source = EnvSource::Random {
        params: RandomEnvParams::default(),
        inflation: 0.0,
    };
    let q = trend_query();
    let rrt = run_trials(
        &source,
        &q,
        &PlannerParams::RrtStar(RrtParams::default()),
        TREND_TRIALS,
        TREND_SEED,
        1,
    )
    .expect("trials run");
    let pso = run_trials(
        &source,
        &q,
        &PlannerParams::Pso(PsoParams::default()),
        TREND_TRIALS,
        TREND_SEED,
        1,
    )
    .expect("trials run");
    (rrt, pso)
}

fn criterion_1(rrt: &TrialStats, pso: &TrialStats) -> Vec<(String, Verdict)> {
    let (fr, fp) = (rrt.feasibility_rate(), pso.feasibility_rate());
    let (sr, sp) = (rrt.std_length(), pso.std_length());
    let (tr, tp) = (rrt.median_time().unwrap(), pso.median_time().unwrap());
    vec![
        (
            "1a trend: feasibility >= 90% per planner".into(),
            verdict(
                fr >= 0.9 && fp >= 0.9,
                format!("rrtstar {:.0}%, pso {:.0}%", fr * 100.0, fp * 100.0),
            ),
        ),
        (
            "1b trend: std_length(rrtstar) < std_length(pso)".into(),
            match (sr, sp) {
                (Some(a), Some(b)) => verdict(a < b, format!("{a:.4} vs {b:.4}")),
                _ => verdict(false, "a planner had no feasible runs"),
            },
        ),
        (
            "1c trend: median_time(pso) < median_time(rrtstar)".into(),
            verdict(tp < tr, format!("pso {tp:.6}s vs rrtstar {tr:.6}s")),
        ),
    ]
}

fn criterion_2() -> Verdict {
    let (env, _) = irregular_preset("irregular-a").unwrap();
    let planners = [
        PlannerParams::RrtStar(RrtParams::default()),
        PlannerParams::Pso(PsoParams::default()),
    ];
    let rows = table1_suite(&env, &table1_queries(), &planners, TREND_SEED, 4);
    let feasible = rows.iter().filter(|r| r.feasible).count();
    let below: Vec<String> = rows
        .iter()
        .filter(|r| r.feasible && r.length < r.straight_line)
        .map(|r| {
            format!(
                "case {} {}: {:.4} < {:.4}",
                r.case_id, r.planner, r.length, r.straight_line
            )
        })
        .collect();
    let per = |k: PlannerKind| rows.iter().filter(|r| r.feasible && r.planner == k).count();
    verdict(
        rows.len() == 20 && feasible >= 14 && below.is_empty(),
        format!(
            "{feasible}/20 feasible (rrtstar {}, pso {}); lower-bound violations: {:?}",
            per(PlannerKind::RrtStar),
            per(PlannerKind::Pso),
            below
        ),
    )
}

const INVARIANT_PAIRS: u64 = 100;

fn criterion_3() -> Verdict {
    let seeds: Vec<u64> = (0..INVARIANT_PAIRS).map(|k| 5000 + k).collect();
    let issues: Vec<String> = par_map(&seeds, |&seed| {
        let params = RrtParams {
            rng_seed: seed,
            ..RrtParams::default()
        };
        audit_rrt_star(&random_env(seed), trend_query(), params, 100)
            .unwrap()
            .into_iter()
            .map(|i| format!("seed {seed}: {i}"))
            .collect::<Vec<_>>()
    })
    .concat();
    verdict(
        issues.is_empty(),
        format!(
            "{INVARIANT_PAIRS} runs, {} violations {:?}",
            issues.len(),
            issues.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion_4() -> Verdict {
    let seeds: Vec<u64> = (0..INVARIANT_PAIRS).map(|k| 6000 + k).collect();
    let issues: Vec<String> = par_map(&seeds, |&seed| {
        let params = PsoParams {
            rng_seed: seed,
            ..PsoParams::default()
        };
        audit_pso(&random_env(seed), trend_query(), params)
            .unwrap()
            .into_iter()
            .map(|i| format!("seed {seed}: {i}"))
            .collect::<Vec<_>>()
    })
    .concat();
    verdict(
        issues.is_empty(),
        format!(
            "{INVARIANT_PAIRS} runs, {} violations {:?}",
            issues.len(),
            issues.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion_5() -> Verdict {
    const RESOLUTION: f64 = 0.5;
    let seeds: Vec<u64> = (0..30).map(|k| 7000 + k).collect();
    let outcomes = par_map(&seeds, |&seed| {
        // Denser worlds than the default so some queries are cut off.
        let params = RandomEnvParams {
            n_obstacles: 12 + (seed % 3) as usize * 40,
            ..RandomEnvParams::default()
        };
        let q = trend_query();
        let env = generate_random_env(seed, &params, &q).unwrap();
        let oracle = grid_oracle(&env, &q, RESOLUTION).unwrap();
        let rrt = plan_rrt_star(
            &env,
            &q,
            &RrtParams {
                rng_seed: seed,
                ..RrtParams::default()
            },
        )
        .unwrap();
        let pso = plan_pso(
            &env,
            &q,
            &PsoParams {
                rng_seed: seed,
                ..PsoParams::default()
            },
        )
        .unwrap();
        (seed, oracle, rrt, pso)
    });
    let mut contradictions = Vec::new();
    let mut ratios = Vec::new();
    let mut unreachable = 0;
    for (seed, oracle, rrt, pso) in &outcomes {
        match oracle {
            OracleOutcome::Unreachable => {
                unreachable += 1;
                for r in [rrt, pso] {
                    if r.feasible {
                        contradictions.push(format!(
                            "seed {seed}: {} feasible but oracle unreachable",
                            r.planner
                        ));
                    }
                }
            }
            OracleOutcome::Reachable { length, .. } => {
                if rrt.feasible {
                    ratios.push(rrt.length / length);
                }
            }
        }
    }
    let median = pathbench::benchmark::median(&ratios);
    let pass = contradictions.is_empty() && median.is_some_and(|m| m <= 1.5);
    verdict(
        pass,
        format!(
            "{unreachable} unreachable, {} contradictions, median rrtstar/oracle ratio {:?} over {} runs",
            contradictions.len(),
            median,
            ratios.len()
        ),
    )
}

fn run_cli(args: &[&str], dir: &FsPath) -> i32 {
    let status = Command::new(env!("CARGO_BIN_EXE_pathbench"))
        .args(args)
        .current_dir(dir)
        .env_remove("PATHBENCH_SEED")
        .output()
        .expect("binary runs");
    status.status.code().unwrap_or(-1)
}

fn dir_bytes(dir: &FsPath) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().into(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn criterion_6() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    std::fs::write(
        root.join("irregular.json"),
        r#"{"environment": {"preset": "irregular-a"}}"#,
    )
    .unwrap();
    std::fs::write(
        root.join("random.json"),
        r#"{"environment": {"random": {"n_obstacles": 15}}, "trials": 4, "base_seed": 42}"#,
    )
    .unwrap();
    std::fs::write(
        root.join("env.json"),
        pathbench::environment::irregular_a_source(),
    )
    .unwrap();
    let scenarios: [(&str, Vec<&str>); 4] = [
        (
            "plan-irregular",
            vec![
                "plan",
                "--config",
                "irregular.json",
                "--seed",
                "7",
                "--no-timing",
            ],
        ),
        (
            "bench-random",
            vec![
                "bench",
                "--config",
                "random.json",
                "--jobs",
                "2",
                "--no-timing",
            ],
        ),
        (
            "plan-pso-random",
            vec![
                "plan",
                "--config",
                "random.json",
                "--planner",
                "pso",
                "--no-timing",
            ],
        ),
        ("render", vec!["render", "--env", "env.json"]),
    ];
    let mut mismatches = Vec::new();
    let mut files = 0;
    for (name, args) in &scenarios {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = format!("{name}-{run}");
            let mut a = args.clone();
            a.extend(["--out", &out]);
            let code = run_cli(&a, root);
            if !(0..=1).contains(&code) {
                mismatches.push(format!("{name}: exit {code}"));
            }
            outputs.push(dir_bytes(&root.join(&out)));
        }
        files += outputs[0].len();
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            mismatches.push(format!("{name}: outputs differ"));
        }
    }
    verdict(
        mismatches.is_empty(),
        format!(
            "{} scenarios, {files} files compared; {mismatches:?}",
            scenarios.len()
        ),
    )
}

fn dense_hit(a: Point2, b: Point2, blocked: impl Fn(Point2) -> bool) -> bool {
    const SAMPLES: usize = 10_000;
    (0..SAMPLES).any(|k| {
        let t = k as f64 / (SAMPLES - 1) as f64;
        blocked(Point2::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t))
    })
}

fn point_segment_distance(a: Point2, b: Point2, p: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / l2).clamp(0.0, 1.0)
    };
    ((a.x + t * dx - p.x).powi(2) + (a.y + t * dy - p.y).powi(2)).sqrt()
}

fn crossing_number_inside(poly: &[Point2], p: Point2) -> bool {
    let mut inside = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (u, v) = (poly[i], poly[j]);
        if (u.y > p.y) != (v.y > p.y) && p.x < (v.x - u.x) * (p.y - u.y) / (v.y - u.y) + u.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

fn criterion_7() -> Verdict {
    const BAND: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut disagreements = Vec::new();
    let mut banded = 0;
    for i in 0..1000 {
        let a = Point2::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        let heading: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let len: f64 = rng.gen_range(0.5..15.0);
        let b = Point2::new(a.x + len * heading.cos(), a.y + len * heading.sin());
        if i % 2 == 0 {
            let c = Point2::new(rng.gen_range(-15.0..15.0), rng.gen_range(-15.0..15.0));
            let r = rng.gen_range(0.5..8.0);
            let analytic = segment_circle_collides(Segment::new(a, b), c, r).unwrap();
            let sampled = dense_hit(a, b, |p| {
                ((p.x - c.x).powi(2) + (p.y - c.y).powi(2)).sqrt() < r
            });
            if (point_segment_distance(a, b, c) - r).abs() <= BAND {
                banded += 1;
            } else if analytic != sampled {
                disagreements.push(format!("circle #{i}"));
            }
        } else {
            let c = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let n = rng.gen_range(3..10);
            let sector = std::f64::consts::TAU / n as f64;
            let poly: Vec<Point2> = (0..n)
                .map(|k| {
                    let t = (k as f64 + rng.gen_range(0.0..0.8)) * sector;
                    let r = rng.gen_range(1.0..8.0);
                    Point2::new(c.x + r * t.cos(), c.y + r * t.sin())
                })
                .collect();
            let analytic = segment_polygon_collides(Segment::new(a, b), &poly).unwrap();
            let sampled = dense_hit(a, b, |p| crossing_number_inside(&poly, p));
            let near_boundary = poly
                .iter()
                .any(|&v| point_segment_distance(a, b, v) <= BAND)
                || (0..n).any(|k| {
                    let (u, v) = (poly[k], poly[(k + 1) % n]);
                    point_segment_distance(u, v, a) <= BAND
                        || point_segment_distance(u, v, b) <= BAND
                });
            if near_boundary {
                banded += 1;
            } else if analytic != sampled {
                disagreements.push(format!("polygon #{i}"));
            }
        }
    }
    verdict(
        disagreements.is_empty(),
        format!("1000 predicates, {banded} in band, disagreements {disagreements:?}"),
    )
}

fn report(lines: &mut Vec<bool>, name: &str, v: Verdict, secs: f64) {
    println!(
        "{} {name}: {} [{secs:.1}s]",
        if v.pass { "PASS" } else { "FAIL" },
        v.detail
    );
    lines.push(v.pass);
}

fn timed(lines: &mut Vec<bool>, name: &str, f: fn() -> Verdict) {
    let clock = Instant::now();
    let v = f();
    report(lines, name, v, clock.elapsed().as_secs_f64());
}

fn main() {
    let mut lines = Vec::new();
    let clock = Instant::now();
    let (rrt, pso) = trend_stats();
    let trend_secs = clock.elapsed().as_secs_f64();
    for (name, v) in criterion_1(&rrt, &pso) {
        report(&mut lines, &name, v, trend_secs);
    }
    timed(
        &mut lines,
        "2 table1 shape: >= 14/20 feasible, lengths >= straight line",
        criterion_2,
    );
    timed(
        &mut lines,
        "3 rrtstar invariants on 100 (env, seed) pairs",
        criterion_3,
    );
    timed(
        &mut lines,
        "4 pso invariants on 100 (env, seed) pairs",
        criterion_4,
    );
    timed(
        &mut lines,
        "5 oracle cross-check on 30 environments",
        criterion_5,
    );
    timed(
        &mut lines,
        "6 determinism of results files and SVGs",
        criterion_6,
    );
    timed(
        &mut lines,
        "7 geometry predicates vs dense sampling",
        criterion_7,
    );

    let failed = lines.iter().filter(|&&p| !p).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        lines.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
