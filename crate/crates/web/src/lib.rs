//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! Every export takes plain numbers and strings and returns JSON (or SVG)
//! text, so the page needs no generated bindings beyond the glue module.

use pathbench::benchmark::{run_trials, summarize, EnvSource, PlannerParams};
use pathbench::environment::{irregular_preset, RandomEnvParams};
use pathbench::geometry::Point2;
use pathbench::render::{SvgScene, PSO_COLOR, RRT_COLOR};
use pathbench::rrtstar::RrtStar;
use pathbench::{plan_pso, Environment, PlannerKind, PsoParams, Query, RrtParams};
use serde_json::json;
use wasm_bindgen::prelude::*;
use web_time::Instant;

const RANDOM_QUERY: Query = Query::new(Point2::new(20.0, -15.0), Point2::new(-25.0, 15.0));

fn source(scenario: &str, n_obstacles: u32) -> Result<(EnvSource, Query), String> {
    match scenario {
        "random" => {
            let params = RandomEnvParams {
                n_obstacles: n_obstacles as usize,
                ..RandomEnvParams::default()
            };
            Ok((
                EnvSource::Random {
                    params,
                    inflation: 0.0,
                },
                RANDOM_QUERY,
            ))
        }
        name => irregular_preset(name)
            .map(|(env, q)| (EnvSource::Fixed(env), q))
            .map_err(|e| e.to_string()),
    }
}

fn world(scenario: &str, seed: u32, n_obstacles: u32) -> Result<(Environment, Query), String> {
    let (src, q) = source(scenario, n_obstacles)?;
    let env = src.build(seed as u64, &q).map_err(|e| e.to_string())?;
    Ok((env, q))
}

/// SVG of the scenario's world and query. `n_obstacles` only affects `random`.
#[wasm_bindgen]
pub fn world_svg(scenario: &str, seed: u32, n_obstacles: u32) -> Result<String, String> {
    let (env, q) = world(scenario, seed, n_obstacles)?;
    Ok(SvgScene::new(&env).with_query(q).render())
}

/// Runs one planner and returns `{"svg": ..., "result": ...}`; RRT* plans
/// also draw their search tree.
#[wasm_bindgen]
pub fn plan(scenario: &str, planner: &str, seed: u32, n_obstacles: u32) -> Result<String, String> {
    let kind: PlannerKind = planner.parse()?;
    let (env, q) = world(scenario, seed, n_obstacles)?;
    let mut scene = SvgScene::new(&env).with_query(q);
    let result = match kind {
        PlannerKind::RrtStar => {
            let clock = Instant::now();
            let params = RrtParams {
                rng_seed: seed as u64,
                ..RrtParams::default()
            };
            let mut planner = RrtStar::new(&env, q, params).map_err(|e| e.to_string())?;
            planner.run();
            let elapsed = clock.elapsed().as_secs_f64();
            scene = scene.with_tree(planner.tree().edges());
            planner.finish(elapsed)
        }
        PlannerKind::Pso => {
            let params = PsoParams {
                rng_seed: seed as u64,
                ..PsoParams::default()
            };
            plan_pso(&env, &q, &params).map_err(|e| e.to_string())?
        }
    };
    if let Some(path) = result.display_path() {
        let color = if kind == PlannerKind::RrtStar {
            RRT_COLOR
        } else {
            PSO_COLOR
        };
        scene = scene.with_path(path.clone(), color);
    }
    Ok(json!({ "svg": scene.render(), "result": result }).to_string())
}

/// Both planners over `trials` seeds starting at `base_seed`; returns the
/// two summaries as a JSON array.
#[wasm_bindgen]
pub fn compare(
    scenario: &str,
    trials: u32,
    base_seed: u32,
    n_obstacles: u32,
) -> Result<String, String> {
    let (src, q) = source(scenario, n_obstacles)?;
    let mut summaries = Vec::new();
    for params in [
        PlannerParams::RrtStar(RrtParams::default()),
        PlannerParams::Pso(PsoParams::default()),
    ] {
        let stats = run_trials(&src, &q, &params, trials as usize, base_seed as u64, 1)
            .map_err(|e| e.to_string())?;
        summaries.push(summarize(&stats).map_err(|e| e.to_string())?);
    }
    serde_json::to_string(&summaries).map_err(|e| e.to_string())
}
