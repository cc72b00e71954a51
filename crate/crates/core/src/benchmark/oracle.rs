//! 8-connected grid shortest path, used as an independent reference length.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::environment::{
    Endpoint, EndpointViolation, Environment, Query, QueryViolation, ViolationCause,
};
use crate::error::{Error, Result};
use crate::geometry::{dist, Point2};

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome {
    Reachable { length: f64, path: Vec<Point2> },
    Unreachable,
}

impl OracleOutcome {
    pub fn length(&self) -> Option<f64> {
        match self {
            OracleOutcome::Reachable { length, .. } => Some(*length),
            OracleOutcome::Unreachable => None,
        }
    }
}

struct Grid<'e> {
    env: &'e Environment,
    resolution: f64,
    nx: usize,
    ny: usize,
    free: Vec<bool>,
}

impl<'e> Grid<'e> {
    fn new(env: &'e Environment, resolution: f64) -> Self {
        let b = env.bounds();
        let nx = (b.width() / resolution).floor() as usize + 1;
        let ny = (b.height() / resolution).floor() as usize + 1;
        let mut grid = Self {
            env,
            resolution,
            nx,
            ny,
            free: Vec::with_capacity(nx * ny),
        };
        for j in 0..ny {
            for i in 0..nx {
                let c = grid.center(i, j);
                grid.free.push(env.point_free(c));
            }
        }
        grid
    }

    fn center(&self, i: usize, j: usize) -> Point2 {
        let b = self.env.bounds();
        Point2::new(
            b.x_min + i as f64 * self.resolution,
            b.y_min + j as f64 * self.resolution,
        )
    }

    fn cell_of(&self, p: Point2) -> (usize, usize) {
        let b = self.env.bounds();
        let i = ((p.x - b.x_min) / self.resolution)
            .round()
            .clamp(0.0, (self.nx - 1) as f64);
        let j = ((p.y - b.y_min) / self.resolution)
            .round()
            .clamp(0.0, (self.ny - 1) as f64);
        (i as usize, j as usize)
    }

    fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }
}

#[derive(PartialEq)]
struct Frontier {
    cost: f64,
    cell: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.cell.cmp(&self.cell))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest 8-connected path over grid cells whose centers are free.
///
/// Cell centers form the lattice `bounds.min + k * resolution`; each endpoint
/// snaps to the nearest center. The returned length is the
/// polyline `start -> cell centers -> target`, with straight moves costing
/// `resolution` and diagonal moves `sqrt(2) * resolution`.
pub fn grid_oracle(env: &Environment, query: &Query, resolution: f64) -> Result<OracleOutcome> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::InvalidParams(format!(
            "resolution must be > 0, got {resolution}"
        )));
    }
    let grid = Grid::new(env, resolution);
    let (si, sj) = grid.cell_of(query.start);
    let (ti, tj) = grid.cell_of(query.target);
    let (s, t) = (grid.index(si, sj), grid.index(ti, tj));
    let mut violations = Vec::new();
    for (endpoint, point, cell) in [
        (Endpoint::Start, query.start, s),
        (Endpoint::Target, query.target, t),
    ] {
        if !grid.free[cell] {
            violations.push(EndpointViolation {
                endpoint,
                point,
                cause: ViolationCause::OutOfBounds,
            });
            if let Some(k) = env.obstacles().iter().position(|o| {
                let c = if endpoint == Endpoint::Start {
                    grid.center(si, sj)
                } else {
                    grid.center(ti, tj)
                };
                o.blocks_point(c, env.inflation())
            }) {
                violations.last_mut().unwrap().cause = ViolationCause::InsideObstacle(k);
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidQuery(QueryViolation { violations }));
    }

    let n = grid.nx * grid.ny;
    let mut cost = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    cost[s] = 0.0;
    heap.push(Frontier { cost: 0.0, cell: s });
    let diag = std::f64::consts::SQRT_2 * resolution;
    while let Some(Frontier { cost: c, cell }) = heap.pop() {
        if c > cost[cell] {
            continue;
        }
        if cell == t {
            break;
        }
        let (i, j) = ((cell % grid.nx) as i64, (cell / grid.nx) as i64);
        for (di, dj) in [
            (-1, -1),
            (0, -1),
            (1, -1),
            (-1, 0),
            (1, 0),
            (-1, 1),
            (0, 1),
            (1, 1),
        ] {
            let (ni, nj) = (i + di, j + dj);
            if ni < 0 || nj < 0 || ni >= grid.nx as i64 || nj >= grid.ny as i64 {
                continue;
            }
            let next = grid.index(ni as usize, nj as usize);
            if !grid.free[next] {
                continue;
            }
            let step = if di != 0 && dj != 0 { diag } else { resolution };
            let nc = c + step;
            if nc < cost[next] {
                cost[next] = nc;
                prev[next] = cell;
                heap.push(Frontier {
                    cost: nc,
                    cell: next,
                });
            }
        }
    }
    if !cost[t].is_finite() {
        return Ok(OracleOutcome::Unreachable);
    }
    let mut cells = vec![t];
    while *cells.last().unwrap() != s {
        cells.push(prev[*cells.last().unwrap()]);
    }
    cells.reverse();
    let mut path = Vec::with_capacity(cells.len() + 2);
    path.push(query.start);
    path.extend(cells.iter().map(|&c| grid.center(c % grid.nx, c / grid.nx)));
    path.push(query.target);
    let length = cost[t] + dist(query.start, path[1]) + dist(path[path.len() - 2], query.target);
    Ok(OracleOutcome::Reachable { length, path })
}
