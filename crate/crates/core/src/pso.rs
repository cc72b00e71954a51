//! Particle swarm path planner.
//!
//! A particle is a flat vector of `2 * n_waypoints` coordinates (interleaved
//! x, y) naming the intermediate waypoints between the fixed start and
//! target. Fitness is the polyline length plus `penalty_lambda` times the
//! length of path lying inside obstacles or outside the bounds.
//!
//! Per iteration, in order:
//! 1. the inertia weight follows a linear schedule from `omega_start` to
//!    `omega_end`, perturbed by a uniform draw in [-0.1, 0.1] when no
//!    personal or global best has improved for `stagnation_window` iterations;
//! 2. every particle draws scalar `r1`, `r2`, updates its velocity
//!    `v = w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x)` (clamped to
//!    `+-v_max`) and its position `x += v` (clamped to the bounds);
//! 3. personal bests, then the global best, are updated.
//!
//! The run stops at `max_iterations`, or once the global best fitness has
//! changed by less than `stop_epsilon` for `stagnation_window` consecutive
//! iterations.

use rand::Rng;
use serde::{Deserialize, Serialize};
use web_time::Instant;

use crate::environment::{validate_query, Environment, Query};
use crate::error::{Error, Result};
use crate::geometry::{Bounds, Path, Point2, Segment};
use crate::result::{PlanResult, PlannerKind, PlannerParams};
use crate::rng::{self, PlannerRng};

/// Half-width of the inertia perturbation applied on stagnation.
pub const INERTIA_JITTER: f64 = 0.1;

/// Cell size used when an inflated polygon forces sampled violation.
pub const VIOLATION_RESOLUTION: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub max_iterations: usize,
    pub population: usize,
    pub n_waypoints: usize,
    pub c1: f64,
    pub c2: f64,
    pub omega_start: f64,
    pub omega_end: f64,
    pub v_max: f64,
    pub penalty_lambda: f64,
    pub stop_epsilon: f64,
    pub stagnation_window: usize,
    pub rng_seed: u64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            population: 50,
            n_waypoints: 5,
            c1: 2.0,
            c2: 2.0,
            omega_start: 0.9,
            omega_end: 0.4,
            v_max: 4.0,
            penalty_lambda: 1000.0,
            stop_epsilon: 1e-4,
            stagnation_window: 30,
            rng_seed: 0,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.max_iterations == 0 || self.population == 0 || self.n_waypoints == 0 {
            return bad("max_iterations, population and n_waypoints must be > 0".into());
        }
        if self.stagnation_window == 0 {
            return bad("stagnation_window must be > 0".into());
        }
        for (name, v) in [("c1", self.c1), ("c2", self.c2), ("v_max", self.v_max)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be > 0, got {v}"));
            }
        }
        if !(self.penalty_lambda.is_finite() && self.penalty_lambda >= 0.0) {
            return bad(format!(
                "penalty_lambda must be >= 0, got {}",
                self.penalty_lambda
            ));
        }
        if !(self.stop_epsilon.is_finite() && self.stop_epsilon >= 0.0) {
            return bad(format!(
                "stop_epsilon must be >= 0, got {}",
                self.stop_epsilon
            ));
        }
        if !(self.omega_start.is_finite() && self.omega_end.is_finite())
            || self.omega_start < self.omega_end
        {
            return bad(format!(
                "omega_start ({}) must be >= omega_end ({})",
                self.omega_start, self.omega_end
            ));
        }
        Ok(())
    }

    pub fn dims(&self) -> usize {
        2 * self.n_waypoints
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_fitness: f64,
    /// Fitness of `position` as of the last evaluation.
    pub fitness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub gbest_position: Vec<f64>,
    pub gbest_fitness: f64,
    pub inertia: f64,
    pub iteration: usize,
}

/// Path `[start, w1, ..., wn, target]` from a particle position.
pub fn decode(position: &[f64], query: &Query) -> Result<Path> {
    if !position.len().is_multiple_of(2) || position.is_empty() {
        return Err(Error::Shape {
            expected: (position.len() / 2 + 1) * 2,
            got: position.len(),
        });
    }
    let mut waypoints = Vec::with_capacity(position.len() / 2 + 2);
    waypoints.push(query.start);
    waypoints.extend(position.chunks_exact(2).map(|c| Point2::new(c[0], c[1])));
    waypoints.push(query.target);
    Path::new(waypoints)
}

/// Intermediate waypoints of `path` as a particle position.
pub fn encode(path: &Path) -> Vec<f64> {
    let w = path.waypoints();
    w[1..w.len() - 1].iter().flat_map(|p| [p.x, p.y]).collect()
}

/// Length of a segment that is blocked (inside an obstacle or out of bounds).
pub fn segment_violation(env: &Environment, s: &Segment) -> f64 {
    let len = s.length();
    if len == 0.0 {
        return 0.0;
    }
    let cells = (len / VIOLATION_RESOLUTION).ceil() as usize;
    env.blocked_intervals(s, cells)
        .iter()
        .map(|(lo, hi)| hi - lo)
        .sum::<f64>()
        * len
}

/// Total blocked length along a polyline.
pub fn violation(env: &Environment, points: &[Point2]) -> f64 {
    points
        .windows(2)
        .map(|w| segment_violation(env, &Segment::new(w[0], w[1])))
        .sum()
}

fn waypoints_into(position: &[f64], query: &Query, buf: &mut Vec<Point2>) {
    buf.clear();
    buf.push(query.start);
    buf.extend(position.chunks_exact(2).map(|c| Point2::new(c[0], c[1])));
    buf.push(query.target);
}

fn polyline(points: &[Point2]) -> f64 {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Path length plus `penalty_lambda` times the blocked length.
pub fn fitness(
    position: &[f64],
    query: &Query,
    env: &Environment,
    penalty_lambda: f64,
) -> Result<f64> {
    let path = decode(position, query)?;
    let length = path.length();
    if penalty_lambda == 0.0 {
        return Ok(length);
    }
    Ok(length + penalty_lambda * violation(env, path.waypoints()))
}

/// Velocity update before clamping.
#[allow(clippy::too_many_arguments)]
pub fn raw_velocity(
    velocity: &[f64],
    position: &[f64],
    pbest: &[f64],
    gbest: &[f64],
    omega: f64,
    c1: f64,
    r1: f64,
    c2: f64,
    r2: f64,
) -> Vec<f64> {
    (0..velocity.len())
        .map(|d| {
            omega * velocity[d]
                + c1 * r1 * (pbest[d] - position[d])
                + c2 * r2 * (gbest[d] - position[d])
        })
        .collect()
}

pub fn clamp_velocity(velocity: &mut [f64], v_max: f64) {
    for v in velocity {
        *v = v.clamp(-v_max, v_max);
    }
}

/// Draws `r1` then `r2` (uniform in [0, 1), shared by every dimension of the
/// particle) and returns the clamped new velocity.
pub fn update_velocity(
    p: &Particle,
    gbest: &[f64],
    omega: f64,
    params: &PsoParams,
    rng: &mut PlannerRng,
) -> Vec<f64> {
    let r1: f64 = rng.gen();
    let r2: f64 = rng.gen();
    let mut v = raw_velocity(
        &p.velocity,
        &p.position,
        &p.pbest_position,
        gbest,
        omega,
        params.c1,
        r1,
        params.c2,
        r2,
    );
    clamp_velocity(&mut v, params.v_max);
    v
}

/// Position after adding the velocity, each coordinate clamped to the bounds.
pub fn update_position(p: &Particle, bounds: &Bounds) -> Vec<f64> {
    p.position
        .iter()
        .zip(&p.velocity)
        .enumerate()
        .map(|(d, (x, v))| {
            let (lo, hi) = if d % 2 == 0 {
                (bounds.x_min, bounds.x_max)
            } else {
                (bounds.y_min, bounds.y_max)
            };
            (x + v).clamp(lo, hi)
        })
        .collect()
}

/// Linear schedule value for `iteration`.
pub fn scheduled_inertia(iteration: usize, params: &PsoParams) -> f64 {
    let frac = (iteration as f64 / params.max_iterations as f64).min(1.0);
    params.omega_start - (params.omega_start - params.omega_end) * frac
}

/// Inertia for `iteration`. `since_improvement` counts iterations since any
/// personal or global best last improved; once it reaches the stagnation
/// window the schedule value is jittered (one rng draw) and clamped back
/// into `[omega_end, omega_start]`.
pub fn update_inertia(
    iteration: usize,
    since_improvement: usize,
    params: &PsoParams,
    rng: &mut PlannerRng,
) -> f64 {
    let omega = scheduled_inertia(iteration, params);
    if since_improvement < params.stagnation_window {
        return omega;
    }
    let jitter = rng::uniform(rng, -INERTIA_JITTER, INERTIA_JITTER);
    (omega + jitter).clamp(params.omega_end, params.omega_start)
}

/// Summary of one iteration, for tracing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationReport {
    /// 1-based index of the iteration just run.
    pub iteration: usize,
    pub omega: f64,
    pub gbest_fitness: f64,
    /// Previous global best minus the new one (always >= 0).
    pub gbest_change: f64,
    pub calm_streak: usize,
    pub any_improved: bool,
}

/// Incremental planner state, steppable one iteration at a time.
pub struct Pso<'e> {
    env: &'e Environment,
    query: Query,
    params: PsoParams,
    swarm: Swarm,
    rng: PlannerRng,
    last_improvement: usize,
    calm_streak: usize,
    buf: Vec<Point2>,
}

impl<'e> Pso<'e> {
    pub fn new(env: &'e Environment, query: Query, params: PsoParams) -> Result<Self> {
        params.validate()?;
        validate_query(env, &query).map_err(Error::InvalidQuery)?;
        let mut rng = rng::seeded(params.rng_seed);
        let b = *env.bounds();
        let n = params.n_waypoints;
        let dims = params.dims();
        let mut particles = Vec::with_capacity(params.population);
        let mut buf = Vec::with_capacity(n + 2);
        for i in 0..params.population {
            let (position, velocity) = if i == 0 {
                let line: Vec<f64> = (1..=n)
                    .flat_map(|k| {
                        let t = k as f64 / (n + 1) as f64;
                        let p = query.start + (query.target - query.start) * t;
                        [p.x, p.y]
                    })
                    .collect();
                (line, vec![0.0; dims])
            } else {
                let pos = (0..dims)
                    .map(|d| {
                        if d % 2 == 0 {
                            rng::uniform(&mut rng, b.x_min, b.x_max)
                        } else {
                            rng::uniform(&mut rng, b.y_min, b.y_max)
                        }
                    })
                    .collect();
                let vel = (0..dims)
                    .map(|_| rng::uniform(&mut rng, -params.v_max, params.v_max))
                    .collect();
                (pos, vel)
            };
            let f = evaluate(env, &query, &position, params.penalty_lambda, &mut buf);
            particles.push(Particle {
                pbest_position: position.clone(),
                position,
                velocity,
                pbest_fitness: f,
                fitness: f,
            });
        }
        let best = argmin_pbest(&particles);
        let swarm = Swarm {
            gbest_position: particles[best].pbest_position.clone(),
            gbest_fitness: particles[best].pbest_fitness,
            particles,
            inertia: params.omega_start,
            iteration: 0,
        };
        Ok(Self {
            env,
            query,
            params,
            swarm,
            rng,
            last_improvement: 0,
            calm_streak: 0,
            buf,
        })
    }

    pub fn swarm(&self) -> &Swarm {
        &self.swarm
    }

    pub fn params(&self) -> &PsoParams {
        &self.params
    }

    pub fn calm_streak(&self) -> usize {
        self.calm_streak
    }

    pub fn converged(&self) -> bool {
        self.calm_streak >= self.params.stagnation_window
    }

    pub fn is_done(&self) -> bool {
        self.swarm.iteration >= self.params.max_iterations || self.converged()
    }

    pub fn step(&mut self) -> IterationReport {
        let t = self.swarm.iteration;
        let omega = update_inertia(t, t - self.last_improvement, &self.params, &mut self.rng);
        self.swarm.inertia = omega;
        let bounds = *self.env.bounds();
        let gbest = self.swarm.gbest_position.clone();
        let mut any_improved = false;
        for p in &mut self.swarm.particles {
            p.velocity = update_velocity(p, &gbest, omega, &self.params, &mut self.rng);
            p.position = update_position(p, &bounds);
            p.fitness = evaluate(
                self.env,
                &self.query,
                &p.position,
                self.params.penalty_lambda,
                &mut self.buf,
            );
            if p.fitness < p.pbest_fitness {
                p.pbest_fitness = p.fitness;
                p.pbest_position.clone_from(&p.position);
                any_improved = true;
            }
        }
        let previous = self.swarm.gbest_fitness;
        let best = argmin_pbest(&self.swarm.particles);
        if self.swarm.particles[best].pbest_fitness < self.swarm.gbest_fitness {
            self.swarm.gbest_fitness = self.swarm.particles[best].pbest_fitness;
            self.swarm
                .gbest_position
                .clone_from(&self.swarm.particles[best].pbest_position);
            any_improved = true;
        }
        let change = previous - self.swarm.gbest_fitness;
        if change.abs() < self.params.stop_epsilon {
            self.calm_streak += 1;
        } else {
            self.calm_streak = 0;
        }
        self.swarm.iteration += 1;
        if any_improved {
            self.last_improvement = self.swarm.iteration;
        }
        IterationReport {
            iteration: self.swarm.iteration,
            omega,
            gbest_fitness: self.swarm.gbest_fitness,
            gbest_change: change,
            calm_streak: self.calm_streak,
            any_improved,
        }
    }

    pub fn run(&mut self) {
        while !self.is_done() {
            self.step();
        }
    }

    pub fn finish(self, elapsed_s: f64) -> PlanResult {
        let path = decode(&self.swarm.gbest_position, &self.query).expect("swarm shape is fixed");
        let blocked = violation(self.env, path.waypoints());
        let feasible = blocked == 0.0 && path.segments().all(|s| self.env.segment_free(&s));
        let closest_approach = if feasible {
            0.0
        } else {
            free_prefix_approach(self.env, &path, self.query.target)
        };
        PlanResult {
            planner: PlannerKind::Pso,
            seed: self.params.rng_seed,
            feasible,
            length: path.length(),
            best_attempt: (!feasible).then(|| path.clone()),
            path: feasible.then_some(path),
            elapsed_s,
            iterations_used: self.swarm.iteration,
            closest_approach,
            params: PlannerParams::Pso(self.params),
            error: None,
        }
    }
}

fn evaluate(
    env: &Environment,
    query: &Query,
    position: &[f64],
    lambda: f64,
    buf: &mut Vec<Point2>,
) -> f64 {
    waypoints_into(position, query, buf);
    let length = polyline(buf);
    if lambda == 0.0 {
        return length;
    }
    length + lambda * violation(env, buf)
}

fn argmin_pbest(particles: &[Particle]) -> usize {
    let mut best = 0;
    for (i, p) in particles.iter().enumerate() {
        if p.pbest_fitness < particles[best].pbest_fitness {
            best = i;
        }
    }
    best
}

/// Distance to `target` from the collision-free prefix of `path` (the part
/// travelled before first entering an obstacle).
fn free_prefix_approach(env: &Environment, path: &Path, target: Point2) -> f64 {
    let mut best = path.first().dist(target);
    for s in path.segments() {
        let len = s.length();
        let cells = ((len / VIOLATION_RESOLUTION).ceil() as usize).max(1);
        let first_blocked = env.blocked_intervals(&s, cells).first().map(|iv| iv.0);
        let end = first_blocked.unwrap_or(1.0);
        let prefix = Segment::new(s.a, s.point_at(end));
        best = best.min(prefix.distance_to_point(target));
        if first_blocked.is_some() || !env.segment_free(&s) {
            break;
        }
    }
    best
}

/// Runs the swarm until the iteration cap or convergence.
pub fn plan_pso(env: &Environment, query: &Query, params: &PsoParams) -> Result<PlanResult> {
    let clock = Instant::now();
    let mut planner = Pso::new(env, *query, *params)?;
    planner.run();
    let elapsed = clock.elapsed().as_secs_f64();
    Ok(planner.finish(elapsed))
}
