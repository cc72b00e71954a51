//! Step-by-step invariant audits of single planner runs.
//!
//! Each audit drives a planner one iteration at a time and returns every
//! violated invariant as a message; an empty list means the run was clean.

use crate::environment::{Environment, Query};
use crate::error::Result;
use crate::geometry::{Segment, EPS};
use crate::pso::{fitness, Pso, PsoParams};
use crate::rrtstar::{RrtParams, RrtStar};

const COST_TOLERANCE: f64 = 1e-9;
const SAFETY_SAMPLE_SPACING: f64 = 0.05;

/// Point-sampling re-check of a segment, independent of the analytic
/// segment predicates.
pub fn sampled_segment_free(env: &Environment, s: &Segment) -> bool {
    let n = ((s.length() / SAFETY_SAMPLE_SPACING).ceil() as usize).max(1);
    (0..=n).all(|k| env.point_free(s.point_at(k as f64 / n as f64)))
}

/// Audits an RRT* run for cost consistency, rewire monotonicity,
/// acyclicity, edge safety and best-cost monotonicity at `checkpoint`
/// intervals.
pub fn audit_rrt_star(
    env: &Environment,
    query: Query,
    params: RrtParams,
    checkpoint: usize,
) -> Result<Vec<String>> {
    let mut planner = RrtStar::new(env, query, params)?;
    let mut issues = Vec::new();
    let mut best_cost = f64::INFINITY;
    let checkpoint = checkpoint.max(1);
    let mut before: Vec<f64> = Vec::new();
    while !planner.is_done() {
        before.clear();
        before.extend(planner.tree().nodes().iter().map(|n| n.cost_to_come));
        planner.step();
        for (i, (&old, node)) in before.iter().zip(planner.tree().nodes()).enumerate() {
            if node.cost_to_come > old + COST_TOLERANCE {
                issues.push(format!(
                    "iteration {}: node {i} cost rose from {old} to {}",
                    planner.iteration(),
                    node.cost_to_come
                ));
            }
        }
        if planner.iteration() % checkpoint == 0 || planner.is_done() {
            if let Err(e) = planner.tree().check_invariants(COST_TOLERANCE) {
                issues.push(format!("iteration {}: {e}", planner.iteration()));
            }
            if let Some(best) = planner.best_goal().filter(|b| b.connects) {
                if best.cost > best_cost + COST_TOLERANCE {
                    issues.push(format!(
                        "iteration {}: best cost rose from {best_cost} to {}",
                        planner.iteration(),
                        best.cost
                    ));
                }
                best_cost = best_cost.min(best.cost);
            }
        }
        if issues.len() > 20 {
            break;
        }
    }
    for (k, e) in planner.tree().edges().enumerate() {
        if !env.segment_free(&e) || !sampled_segment_free(env, &e) {
            issues.push(format!("tree edge {k} ({} -> {}) collides", e.a, e.b));
        }
    }
    let result = planner.finish(0.0);
    if let Some(path) = &result.path {
        for s in path.segments() {
            if !sampled_segment_free(env, &s) {
                issues.push(format!("returned segment {} -> {} collides", s.a, s.b));
            }
        }
        if (path.length() - result.length).abs() > COST_TOLERANCE {
            issues.push(format!(
                "reported length {} != path length {}",
                result.length,
                path.length()
            ));
        }
    }
    Ok(issues)
}

/// Audits a PSO run for global-best monotonicity, velocity clamping,
/// position containment, zero-penalty length equivalence and the early-stop
/// rule.
pub fn audit_pso(env: &Environment, query: Query, params: PsoParams) -> Result<Vec<String>> {
    let mut planner = Pso::new(env, query, params)?;
    let mut issues = Vec::new();
    let mut calm_history: Vec<bool> = Vec::new();
    let bounds = *env.bounds();
    while !planner.is_done() {
        let previous = planner.swarm().gbest_fitness;
        let report = planner.step();
        let swarm = planner.swarm();
        let t = report.iteration;
        if swarm.gbest_fitness > previous {
            issues.push(format!(
                "iteration {t}: gbest rose from {previous} to {}",
                swarm.gbest_fitness
            ));
        }
        calm_history.push(report.gbest_change.abs() < params.stop_epsilon);
        for (i, p) in swarm.particles.iter().enumerate() {
            if p.velocity.iter().any(|v| v.abs() > params.v_max + EPS) {
                issues.push(format!(
                    "iteration {t}: particle {i} velocity exceeds v_max"
                ));
            }
            let inside = p.position.chunks_exact(2).all(|c| {
                c[0] >= bounds.x_min
                    && c[0] <= bounds.x_max
                    && c[1] >= bounds.y_min
                    && c[1] <= bounds.y_max
            });
            if !inside {
                issues.push(format!("iteration {t}: particle {i} left the bounds"));
            }
            if p.pbest_fitness > p.fitness {
                issues.push(format!(
                    "iteration {t}: particle {i} personal best is worse than its position"
                ));
            }
        }
        if issues.len() > 20 {
            break;
        }
    }
    let swarm = planner.swarm();
    for (i, p) in swarm.particles.iter().enumerate() {
        let unpenalized = fitness(&p.position, &query, env, 0.0)?;
        let length = crate::pso::decode(&p.position, &query)?.length();
        if (unpenalized - length).abs() > COST_TOLERANCE {
            issues.push(format!(
                "particle {i}: zero-penalty fitness {unpenalized} != length {length}"
            ));
        }
    }
    let stopped_early = swarm.iteration < params.max_iterations;
    if stopped_early {
        let w = params.stagnation_window;
        let full_window =
            calm_history.len() >= w && calm_history[calm_history.len() - w..].iter().all(|&c| c);
        if !full_window {
            issues.push(format!(
                "stopped at iteration {} without a full calm window",
                swarm.iteration
            ));
        }
    }
    if calm_history.len() >= params.stagnation_window {
        let w = params.stagnation_window;
        for end in w..calm_history.len() {
            if calm_history[end - w..end].iter().all(|&c| c) {
                issues.push(format!(
                    "kept running after a full calm window ended at iteration {end}"
                ));
                break;
            }
        }
    }
    Ok(issues)
}
