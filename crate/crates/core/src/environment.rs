//! Workspaces, obstacles, queries, and the two experiment worlds: seeded
//! random circles and the fixed irregular-polygon preset.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dist, Bounds, Circle, Point2, Polygon, Segment};
use crate::rng::{self, ENVIRONMENT_STREAM};

const IRREGULAR_A: &str = include_str!("../presets/irregular-a.json");

/// Names accepted by [`irregular_preset`].
pub const PRESET_NAMES: &[&str] = &["irregular-a", "empty"];

/// Default workspace shared by the random generator and the presets.
pub const DEFAULT_BOUNDS: Bounds = Bounds::new(-40.0, 40.0, -40.0, 20.0);

const MAX_PLACEMENT_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Obstacle {
    Circle(Circle),
    Polygon(Polygon),
}

impl Obstacle {
    pub fn validate(&self) -> Result<()> {
        match self {
            Obstacle::Circle(c) => c.validate(),
            Obstacle::Polygon(p) => p.validate(),
        }
    }

    pub fn blocks_point(&self, p: Point2, margin: f64) -> bool {
        match self {
            Obstacle::Circle(c) => c.blocks_point(p, margin),
            Obstacle::Polygon(poly) => poly.blocks_point(p, margin),
        }
    }

    pub fn blocks_segment(&self, s: &Segment, margin: f64) -> bool {
        match self {
            Obstacle::Circle(c) => c.blocks_segment(s, margin),
            Obstacle::Polygon(poly) => poly.blocks_segment(s, margin),
        }
    }

    fn intersects_bounds(&self, b: &Bounds) -> bool {
        match self {
            Obstacle::Circle(c) => dist(b.clamp(c.center), c.center) <= c.radius,
            Obstacle::Polygon(poly) => {
                let corners = b.corners();
                let rect_edges: Vec<Segment> = (0..4)
                    .map(|i| Segment::new(corners[i], corners[(i + 1) % 4]))
                    .collect();
                poly.vertices.iter().any(|v| b.contains(*v))
                    || corners.iter().any(|c| poly.contains_strict(*c))
                    || poly
                        .edges()
                        .any(|e| rect_edges.iter().any(|r| r.intersects(&e)))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub start: Point2,
    pub target: Point2,
}

impl Query {
    pub const fn new(start: Point2, target: Point2) -> Self {
        Self { start, target }
    }

    pub fn straight_line(&self) -> f64 {
        dist(self.start, self.target)
    }
}

/// On-disk form of an environment: the shared file format for presets,
/// `render` inputs and inline config sections.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentDoc {
    pub bounds: Bounds,
    pub obstacles: Vec<Obstacle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<Query>,
}

impl EnvironmentDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("environment documents always serialize")
    }

    pub fn into_environment(self) -> Result<(Environment, Option<Query>)> {
        Ok((Environment::new(self.bounds, self.obstacles)?, self.query))
    }
}

/// Validated workspace. Immutable once built and cheap to share across
/// concurrent planning runs.
#[derive(Clone, Debug, PartialEq)]
pub struct Environment {
    bounds: Bounds,
    obstacles: Vec<Obstacle>,
    inflation: f64,
}

impl Environment {
    pub fn new(bounds: Bounds, obstacles: Vec<Obstacle>) -> Result<Self> {
        bounds.validate()?;
        for (i, o) in obstacles.iter().enumerate() {
            o.validate()
                .map_err(|e| Error::InvalidObstacle(format!("obstacle #{i}: {e}")))?;
            if !o.intersects_bounds(&bounds) {
                return Err(Error::InvalidEnvironment(format!(
                    "obstacle #{i} lies entirely outside the bounds"
                )));
            }
        }
        Ok(Self {
            bounds,
            obstacles,
            inflation: 0.0,
        })
    }

    pub fn empty(bounds: Bounds) -> Result<Self> {
        Self::new(bounds, Vec::new())
    }

    /// Treats every obstacle as grown by `margin` for all collision queries.
    pub fn with_inflation(mut self, margin: f64) -> Result<Self> {
        if !(margin.is_finite() && margin >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "inflation must be >= 0, got {margin}"
            )));
        }
        self.inflation = margin;
        Ok(self)
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn inflation(&self) -> f64 {
        self.inflation
    }

    pub fn to_doc(&self, query: Option<Query>) -> EnvironmentDoc {
        EnvironmentDoc {
            bounds: self.bounds,
            obstacles: self.obstacles.clone(),
            query,
        }
    }

    pub fn point_free(&self, p: Point2) -> bool {
        self.bounds.contains(p) && self.blocking_obstacle(p).is_none()
    }

    fn blocking_obstacle(&self, p: Point2) -> Option<usize> {
        self.obstacles
            .iter()
            .position(|o| o.blocks_point(p, self.inflation))
    }

    /// Segment stays in bounds and touches no obstacle interior.
    pub fn segment_free(&self, s: &Segment) -> bool {
        self.bounds.contains(s.a)
            && self.bounds.contains(s.b)
            && !self
                .obstacles
                .iter()
                .any(|o| o.blocks_segment(s, self.inflation))
    }

    /// Sorted, disjoint open parameter intervals of `s` that are blocked
    /// (inside an obstacle or outside the bounds).
    ///
    /// Circles, zero-inflation polygons and the bounds are handled
    /// analytically. Inflated polygons fall back to `cells` equal cells, each
    /// blocked iff its midpoint is.
    pub fn blocked_intervals(&self, s: &Segment, cells: usize) -> Vec<(f64, f64)> {
        let mut raw = Vec::new();
        match self.bounds.clip(s) {
            None => raw.push((0.0, 1.0)),
            Some((t0, t1)) => {
                if t0 > 0.0 {
                    raw.push((0.0, t0));
                }
                if t1 < 1.0 {
                    raw.push((t1, 1.0));
                }
            }
        }
        for o in &self.obstacles {
            match o {
                Obstacle::Circle(c) => raw.extend(c.blocked_interval(s, self.inflation)),
                Obstacle::Polygon(poly) if self.inflation == 0.0 => {
                    poly.blocked_intervals(s, &mut raw)
                }
                Obstacle::Polygon(poly) => {
                    let m = cells.max(1);
                    for k in 0..m {
                        let t = (k as f64 + 0.5) / m as f64;
                        if poly.blocks_point(s.point_at(t), self.inflation) {
                            raw.push((k as f64 / m as f64, (k + 1) as f64 / m as f64));
                        }
                    }
                }
            }
        }
        merge_intervals(raw)
    }
}

fn merge_intervals(mut raw: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (lo, hi) in raw {
        match merged.last_mut() {
            Some(last) if lo < last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Start,
    Target,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::Start => "start",
            Endpoint::Target => "target",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCause {
    OutOfBounds,
    NonFinite,
    InsideObstacle(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndpointViolation {
    pub endpoint: Endpoint,
    pub point: Point2,
    pub cause: ViolationCause,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryViolation {
    pub violations: Vec<EndpointViolation>,
}

impl QueryViolation {
    pub fn involves(&self, endpoint: Endpoint) -> bool {
        self.violations.iter().any(|v| v.endpoint == endpoint)
    }
}

impl fmt::Display for QueryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match v.cause {
                ViolationCause::OutOfBounds => write!(
                    f,
                    "{} {} lies outside the workspace bounds",
                    v.endpoint, v.point
                )?,
                ViolationCause::NonFinite => write!(f, "{} {} is not finite", v.endpoint, v.point)?,
                ViolationCause::InsideObstacle(k) => {
                    write!(f, "{} {} lies inside obstacle #{k}", v.endpoint, v.point)?
                }
            }
        }
        Ok(())
    }
}

/// Checks that both query endpoints are admissible in `env`.
pub fn validate_query(env: &Environment, q: &Query) -> std::result::Result<(), QueryViolation> {
    let mut violations = Vec::new();
    for (endpoint, point) in [(Endpoint::Start, q.start), (Endpoint::Target, q.target)] {
        let cause = if !point.is_finite() {
            Some(ViolationCause::NonFinite)
        } else if !env.bounds.contains(point) {
            Some(ViolationCause::OutOfBounds)
        } else {
            env.blocking_obstacle(point)
                .map(ViolationCause::InsideObstacle)
        };
        if let Some(cause) = cause {
            violations.push(EndpointViolation {
                endpoint,
                point,
                cause,
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(QueryViolation { violations })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RandomEnvParams {
    pub n_obstacles: usize,
    pub bounds: Bounds,
    pub radius_range: [f64; 2],
    pub clearance: f64,
}

impl Default for RandomEnvParams {
    fn default() -> Self {
        Self {
            n_obstacles: 12,
            bounds: DEFAULT_BOUNDS,
            radius_range: [2.0, 6.0],
            clearance: 1.0,
        }
    }
}

impl RandomEnvParams {
    pub fn validate(&self) -> Result<()> {
        self.bounds.validate()?;
        let [lo, hi] = self.radius_range;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::InvalidParams(format!(
                "radius range must satisfy 0 < r_lo <= r_hi, got [{lo}, {hi}]"
            )));
        }
        if !(self.clearance.is_finite() && self.clearance >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "clearance must be >= 0, got {}",
                self.clearance
            )));
        }
        Ok(())
    }
}

/// Places `n_obstacles` circles with centers uniform over the bounds and
/// radii uniform over the radius range, rejecting any circle that would come
/// within `clearance` of either query endpoint.
pub fn generate_random_env(
    seed: u64,
    params: &RandomEnvParams,
    query: &Query,
) -> Result<Environment> {
    params.validate()?;
    let b = params.bounds;
    for p in [query.start, query.target] {
        if !p.is_finite() || !b.contains(p) {
            return Err(Error::Generation(format!(
                "query point {p} lies outside the bounds"
            )));
        }
    }
    let [r_lo, r_hi] = params.radius_range;
    let mut rng = rng::seeded_stream(seed, ENVIRONMENT_STREAM);
    let mut obstacles = Vec::with_capacity(params.n_obstacles);
    for i in 0..params.n_obstacles {
        let mut placed = None;
        for _ in 0..MAX_PLACEMENT_ATTEMPTS {
            let center = Point2::new(
                rng::uniform(&mut rng, b.x_min, b.x_max),
                rng::uniform(&mut rng, b.y_min, b.y_max),
            );
            let radius = rng::uniform(&mut rng, r_lo, r_hi);
            let reach = radius + params.clearance;
            if dist(center, query.start) > reach && dist(center, query.target) > reach {
                placed = Some(Circle { center, radius });
                break;
            }
        }
        match placed {
            Some(c) => obstacles.push(Obstacle::Circle(c)),
            None => {
                return Err(Error::Generation(format!(
                    "could not place obstacle #{i} after {MAX_PLACEMENT_ATTEMPTS} attempts"
                )))
            }
        }
    }
    Environment::new(b, obstacles)
}

/// Looks up a named fixed scenario.
///
/// `irregular-a` is four concave polygons split into two walls. Each wall has
/// a 4-unit gap (x in [14, 18] for the lower wall, x in [-2, 2] for the upper)
/// plus a wider opening at the far end, so the short route threads an S
/// through both narrow gaps.
pub fn irregular_preset(name: &str) -> Result<(Environment, Query)> {
    match name {
        "irregular-a" => {
            let doc = EnvironmentDoc::from_json(IRREGULAR_A)?;
            let (env, query) = doc.into_environment()?;
            Ok((env, query.expect("preset ships a query")))
        }
        "empty" => Ok((
            Environment::empty(DEFAULT_BOUNDS)?,
            Query::new(Point2::new(20.0, -15.0), Point2::new(-25.0, 15.0)),
        )),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// Raw text of the `irregular-a` preset file.
pub fn irregular_a_source() -> &'static str {
    IRREGULAR_A
}
