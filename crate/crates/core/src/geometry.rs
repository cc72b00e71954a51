//! Planar primitives and exact collision predicates.
//!
//! Conventions shared by every predicate in the crate:
//!
//! * obstacle interiors are blocked, boundaries are free (a segment tangent
//!   to a circle does not collide);
//! * a segment that touches a polygon edge does collide, because it
//!   intersects the edge;
//! * comparisons use the absolute tolerance [`EPS`].

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::environment::Environment;
use crate::error::{Error, Result};

pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Self) -> f64 {
        dist(self, other)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl std::fmt::Display for Point2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Euclidean distance, the edge cost used by both planners.
#[inline]
pub fn dist(a: Point2, b: Point2) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        dist(self.a, self.b)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.a + (self.b - self.a) * t
    }

    /// Parameter in `[0, 1]` of the point on the segment closest to `p`.
    pub fn closest_t(&self, p: Point2) -> f64 {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 <= 0.0 {
            return 0.0;
        }
        ((p - self.a).dot(d) / len2).clamp(0.0, 1.0)
    }

    pub fn distance_to_point(&self, p: Point2) -> f64 {
        dist(self.point_at(self.closest_t(p)), p)
    }

    pub fn distance_to_segment(&self, other: &Segment) -> f64 {
        if self.crosses_properly(other) {
            return 0.0;
        }
        self.distance_to_point(other.a)
            .min(self.distance_to_point(other.b))
            .min(other.distance_to_point(self.a))
            .min(other.distance_to_point(self.b))
    }

    /// Closed intersection test (touching counts).
    pub fn intersects(&self, other: &Segment) -> bool {
        self.distance_to_segment(other) <= EPS
    }

    fn crosses_properly(&self, other: &Segment) -> bool {
        let d1 = orient(other.a, other.b, self.a);
        let d2 = orient(other.a, other.b, self.b);
        let d3 = orient(self.a, self.b, other.a);
        let d4 = orient(self.a, self.b, other.b);
        opposite(d1, d2) && opposite(d3, d4)
    }
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn opposite(u: f64, v: f64) -> bool {
    (u > EPS && v < -EPS) || (u < -EPS && v > EPS)
}

/// An ordered list of waypoints with at least two entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Path {
    waypoints: Vec<Point2>,
}

impl Path {
    pub fn new(waypoints: Vec<Point2>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidPath(format!(
                "a path needs at least 2 waypoints, got {}",
                waypoints.len()
            )));
        }
        if let Some(p) = waypoints.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidPath(format!("non-finite waypoint {p}")));
        }
        Ok(Self { waypoints })
    }

    pub fn waypoints(&self) -> &[Point2] {
        &self.waypoints
    }

    pub fn first(&self) -> Point2 {
        self.waypoints[0]
    }

    pub fn last(&self) -> Point2 {
        self.waypoints[self.waypoints.len() - 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.waypoints.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        polyline_length(&self.waypoints)
    }
}

impl TryFrom<Vec<Point2>> for Path {
    type Error = Error;
    fn try_from(waypoints: Vec<Point2>) -> Result<Self> {
        Path::new(waypoints)
    }
}

impl From<Path> for Vec<Point2> {
    fn from(p: Path) -> Self {
        p.waypoints
    }
}

fn polyline_length(points: &[Point2]) -> f64 {
    points.windows(2).map(|w| dist(w[0], w[1])).sum()
}

/// Total Euclidean length of a waypoint sequence.
pub fn path_length(points: &[Point2]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidPath(format!(
            "a path needs at least 2 waypoints, got {}",
            points.len()
        )));
    }
    Ok(polyline_length(points))
}

/// Axis-aligned workspace rectangle, serialized as `[x_min, x_max, y_min, y_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub const fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::InvalidEnvironment(format!(
                "bounds must satisfy x_min < x_max and y_min < y_max, got {:?}",
                <[f64; 4]>::from(*self)
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.x_min - EPS
            && p.x <= self.x_max + EPS
            && p.y >= self.y_min - EPS
            && p.y <= self.y_max + EPS
    }

    pub fn clamp(&self, p: Point2) -> Point2 {
        Point2::new(
            p.x.clamp(self.x_min, self.x_max),
            p.y.clamp(self.y_min, self.y_max),
        )
    }

    pub fn corners(&self) -> [Point2; 4] {
        [
            Point2::new(self.x_min, self.y_min),
            Point2::new(self.x_max, self.y_min),
            Point2::new(self.x_max, self.y_max),
            Point2::new(self.x_min, self.y_max),
        ]
    }

    /// Parameter range of `s` that lies inside the rectangle (Liang-Barsky),
    /// or `None` if the segment misses it entirely.
    pub fn clip(&self, s: &Segment) -> Option<(f64, f64)> {
        let d = s.b - s.a;
        let mut t0 = 0.0_f64;
        let mut t1 = 1.0_f64;
        let checks = [
            (-d.x, s.a.x - self.x_min),
            (d.x, self.x_max - s.a.x),
            (-d.y, s.a.y - self.y_min),
            (d.y, self.y_max - s.a.y),
        ];
        for (p, q) in checks {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        (t0 <= t1).then_some((t0, t1))
    }
}

impl From<[f64; 4]> for Bounds {
    fn from([x_min, x_max, y_min, y_max]: [f64; 4]) -> Self {
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }
}

impl From<Bounds> for [f64; 4] {
    fn from(b: Bounds) -> Self {
        [b.x_min, b.x_max, b.y_min, b.y_max]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        let c = Self { center, radius };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(Error::InvalidObstacle(format!(
                "non-finite circle center {}",
                self.center
            )));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidObstacle(format!(
                "circle radius must be positive, got {}",
                self.radius
            )));
        }
        Ok(())
    }

    pub fn blocks_point(&self, p: Point2, margin: f64) -> bool {
        dist(p, self.center) < self.radius + margin - EPS
    }

    pub fn blocks_segment(&self, s: &Segment, margin: f64) -> bool {
        s.distance_to_point(self.center) < self.radius + margin - EPS
    }

    /// Open parameter interval of `s` strictly inside the (inflated) disk.
    pub fn blocked_interval(&self, s: &Segment, margin: f64) -> Option<(f64, f64)> {
        let r = self.radius + margin;
        let d = s.b - s.a;
        let f = s.a - self.center;
        let a = d.dot(d);
        let c = f.dot(f) - r * r;
        if a <= 0.0 {
            return (c < 0.0).then_some((0.0, 1.0));
        }
        let b = 2.0 * f.dot(d);
        let disc = b * b - 4.0 * a * c;
        if disc <= 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        let lo = ((-b - sq) / (2.0 * a)).max(0.0);
        let hi = ((-b + sq) / (2.0 * a)).min(1.0);
        (lo < hi).then_some((lo, hi))
    }
}

/// A simple polygon; may be concave. Containment uses the even-odd rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polygon {
    pub vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let p = Self { vertices };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return Err(Error::InvalidObstacle(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        if let Some(p) = v.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidObstacle(format!(
                "non-finite polygon vertex {p}"
            )));
        }
        for i in 0..n {
            if dist(v[i], v[(i + 1) % n]) <= EPS {
                return Err(Error::InvalidObstacle(format!(
                    "repeated consecutive vertex {} at index {i}",
                    v[i]
                )));
            }
        }
        let edges: Vec<Segment> = self.edges().collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !adjacent && edges[i].intersects(&edges[j]) {
                    return Err(Error::InvalidObstacle(format!(
                        "polygon is not simple: edges {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn boundary_distance(&self, p: Point2) -> f64 {
        self.edges()
            .map(|e| e.distance_to_point(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd containment; points on (or within `EPS` of) the boundary are outside.
    pub fn contains_strict(&self, p: Point2) -> bool {
        if self.boundary_distance(p) <= EPS {
            return false;
        }
        self.even_odd(p)
    }

    fn even_odd(&self, p: Point2) -> bool {
        let mut inside = false;
        for e in self.edges() {
            let (a, b) = (e.a, e.b);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn blocks_point(&self, p: Point2, margin: f64) -> bool {
        if margin > 0.0 {
            return self.even_odd(p) || self.boundary_distance(p) < margin - EPS;
        }
        self.contains_strict(p)
    }

    pub fn blocks_segment(&self, s: &Segment, margin: f64) -> bool {
        if self.contains_strict(s.a) || self.contains_strict(s.b) {
            return true;
        }
        if margin > 0.0 {
            self.edges()
                .any(|e| e.distance_to_segment(s) < margin - EPS)
        } else {
            self.edges().any(|e| e.intersects(s))
        }
    }

    /// Open parameter intervals of `s` strictly inside the polygon.
    pub fn blocked_intervals(&self, s: &Segment, out: &mut Vec<(f64, f64)>) {
        let d = s.b - s.a;
        let mut cuts = vec![0.0, 1.0];
        for e in self.edges() {
            let ed = e.b - e.a;
            let denom = d.cross(ed);
            if denom.abs() <= EPS * EPS {
                continue;
            }
            let w = e.a - s.a;
            let t = w.cross(ed) / denom;
            let u = w.cross(d) / denom;
            if t > 0.0 && t < 1.0 && (-EPS..=1.0 + EPS).contains(&u) {
                cuts.push(t);
            }
        }
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi - lo <= 0.0 {
                continue;
            }
            if self.contains_strict(s.point_at(0.5 * (lo + hi))) {
                out.push((lo, hi));
            }
        }
    }
}

/// True iff the closed segment comes strictly closer than `radius` to `center`.
pub fn segment_circle_collides(s: Segment, center: Point2, radius: f64) -> Result<bool> {
    let circle = Circle::new(center, radius)?;
    Ok(circle.blocks_segment(&s, 0.0))
}

/// True iff `s` intersects any edge of `poly` or has an endpoint strictly inside it.
pub fn segment_polygon_collides(s: Segment, poly: &[Point2]) -> Result<bool> {
    let poly = Polygon::new(poly.to_vec())?;
    Ok(poly.blocks_segment(&s, 0.0))
}

/// True iff `p` is inside the workspace bounds and outside every obstacle interior.
pub fn point_free(p: Point2, env: &Environment) -> bool {
    env.point_free(p)
}
