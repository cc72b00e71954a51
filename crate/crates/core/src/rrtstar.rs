//! RRT* over a 2D workspace.
//!
//! Each iteration samples uniformly over the bounds, steers from the nearest
//! tree node by at most `step_size`, and (if the new edge is free) connects
//! the new node through the cheapest collision-free neighbor before rewiring
//! the neighborhood through it. Every inserted node within `min_threshold`
//! of the target is remembered, and the cheapest one is extracted once the
//! full iteration budget is spent.

use serde::{Deserialize, Serialize};
use web_time::Instant;

use crate::environment::{validate_query, Environment, Query};
use crate::error::{Error, Result};
use crate::geometry::{dist, Bounds, Path, Point2, Segment, EPS};
use crate::result::{PlanResult, PlannerKind, PlannerParams};
use crate::rng::{self, PlannerRng};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RrtParams {
    pub iterations_num: usize,
    pub step_size: f64,
    pub min_threshold: f64,
    pub neighbor_radius: f64,
    pub rng_seed: u64,
}

impl Default for RrtParams {
    fn default() -> Self {
        Self {
            iterations_num: 2000,
            step_size: 2.0,
            min_threshold: 3.0,
            neighbor_radius: 4.0,
            rng_seed: 0,
        }
    }
}

impl RrtParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")))
            }
        };
        if self.iterations_num == 0 {
            return Err(Error::InvalidParams("iterations_num must be > 0".into()));
        }
        positive("step_size", self.step_size)?;
        positive("min_threshold", self.min_threshold)?;
        positive("neighbor_radius", self.neighbor_radius)?;
        if self.neighbor_radius < self.step_size {
            return Err(Error::InvalidParams(format!(
                "neighbor_radius ({}) must be >= step_size ({})",
                self.neighbor_radius, self.step_size
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RrtNode {
    pub position: Point2,
    pub parent: Option<usize>,
    pub cost_to_come: f64,
}

/// Rooted tree; node 0 is the root.
#[derive(Clone, Debug)]
pub struct RrtTree {
    nodes: Vec<RrtNode>,
    children: Vec<Vec<usize>>,
}

impl RrtTree {
    pub fn new(root: Point2) -> Self {
        Self {
            nodes: vec![RrtNode {
                position: root,
                parent: None,
                cost_to_come: 0.0,
            }],
            children: vec![Vec::new()],
        }
    }

    /// Tree with no nodes. Only useful for exercising error paths.
    pub fn empty() -> Self {
        Self {
            nodes: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[RrtNode] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &RrtNode {
        &self.nodes[idx]
    }

    pub fn children(&self, idx: usize) -> &[usize] {
        &self.children[idx]
    }

    /// Appends `position` as a child of `parent`, returning its index.
    pub fn insert(&mut self, parent: usize, position: Point2) -> usize {
        let cost_to_come =
            self.nodes[parent].cost_to_come + dist(self.nodes[parent].position, position);
        self.nodes.push(RrtNode {
            position,
            parent: Some(parent),
            cost_to_come,
        });
        self.children.push(Vec::new());
        let idx = self.nodes.len() - 1;
        self.children[parent].push(idx);
        idx
    }

    fn is_ancestor(&self, maybe_ancestor: usize, mut node: usize) -> bool {
        loop {
            if node == maybe_ancestor {
                return true;
            }
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    /// Moves `child` under `new_parent` and recomputes the cost of its subtree.
    pub fn reparent(&mut self, child: usize, new_parent: usize) {
        if let Some(old) = self.nodes[child].parent {
            let siblings = &mut self.children[old];
            if let Some(pos) = siblings.iter().position(|&c| c == child) {
                siblings.swap_remove(pos);
            }
        }
        self.nodes[child].parent = Some(new_parent);
        self.children[new_parent].push(child);
        let mut stack = vec![child];
        while let Some(n) = stack.pop() {
            let p = self.nodes[n].parent.expect("non-root node has a parent");
            self.nodes[n].cost_to_come =
                self.nodes[p].cost_to_come + dist(self.nodes[p].position, self.nodes[n].position);
            stack.extend_from_slice(&self.children[n]);
        }
    }

    /// Parent-child segments, one per non-root node.
    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.nodes.iter().filter_map(|n| {
            n.parent
                .map(|p| Segment::new(self.nodes[p].position, n.position))
        })
    }

    /// Checks cost consistency (within `tol`) and that every node reaches
    /// the root. Returns a description of the first violation.
    pub fn check_invariants(&self, tol: f64) -> std::result::Result<(), String> {
        let Some(root) = self.nodes.first() else {
            return Ok(());
        };
        if root.parent.is_some() || root.cost_to_come != 0.0 {
            return Err("root must have no parent and zero cost".into());
        }
        for (i, n) in self.nodes.iter().enumerate().skip(1) {
            let Some(p) = n.parent else {
                return Err(format!("node {i} has no parent"));
            };
            let expected = self.nodes[p].cost_to_come + dist(self.nodes[p].position, n.position);
            if (n.cost_to_come - expected).abs() > tol {
                return Err(format!(
                    "node {i}: cost {} != parent cost + edge {}",
                    n.cost_to_come, expected
                ));
            }
            let mut cur = i;
            let mut steps = 0;
            while let Some(up) = self.nodes[cur].parent {
                cur = up;
                steps += 1;
                if steps > self.nodes.len() {
                    return Err(format!("node {i} is on a cycle"));
                }
            }
            if cur != 0 {
                return Err(format!("node {i} does not reach the root"));
            }
        }
        Ok(())
    }
}

/// Uniform point over the bounds; one draw per coordinate, x first.
pub fn random_sample(bounds: &Bounds, rng: &mut PlannerRng) -> Point2 {
    let x = rng::uniform(rng, bounds.x_min, bounds.x_max);
    let y = rng::uniform(rng, bounds.y_min, bounds.y_max);
    Point2::new(x, y)
}

/// Index of the node closest to `p`; ties go to the lowest index.
pub fn find_nearest(tree: &RrtTree, p: Point2) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, n) in tree.nodes.iter().enumerate() {
        let d = dist(n.position, p);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
        .ok_or_else(|| Error::InvalidState("nearest-node query on an empty tree".into()))
}

/// Moves from `p_near` toward `p_rand` by at most `step_size`.
pub fn steering(p_rand: Point2, p_near: Point2, step_size: f64) -> Point2 {
    let d = dist(p_near, p_rand);
    if d <= step_size {
        return p_rand;
    }
    p_near + (p_rand - p_near) * (step_size / d)
}

/// True iff the segment `a -> b` is free and `b` itself is admissible.
pub fn edge_free(a: Point2, b: Point2, env: &Environment) -> bool {
    env.segment_free(&Segment::new(a, b)) && env.point_free(b)
}

/// All node indices within `radius` of `p_new`, ascending.
pub fn get_neighbors(tree: &RrtTree, p_new: Point2, radius: f64) -> Vec<usize> {
    tree.nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| dist(n.position, p_new) <= radius)
        .map(|(i, _)| i)
        .collect()
}

/// Cheapest collision-free neighbor to connect `p_new` through, falling back
/// to `near_idx` when every neighbor edge is blocked.
pub fn choose_parent(
    tree: &RrtTree,
    neighbors: &[usize],
    near_idx: usize,
    p_new: Point2,
    env: &Environment,
) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for &n in neighbors {
        let node = &tree.nodes[n];
        let cost = node.cost_to_come + dist(node.position, p_new);
        if best.is_none_or(|(_, bc)| cost < bc) && edge_free(node.position, p_new, env) {
            best = Some((n, cost));
        }
    }
    best.map_or(near_idx, |(n, _)| n)
}

/// Reparents each neighbor through `new_idx` when that strictly lowers its
/// cost and the connecting edge is free. Returns how many nodes moved.
pub fn rewire(tree: &mut RrtTree, neighbors: &[usize], new_idx: usize, env: &Environment) -> usize {
    let new_pos = tree.nodes[new_idx].position;
    let new_cost = tree.nodes[new_idx].cost_to_come;
    let mut moved = 0;
    for &n in neighbors {
        if n == new_idx || tree.nodes[new_idx].parent == Some(n) {
            continue;
        }
        let candidate = new_cost + dist(new_pos, tree.nodes[n].position);
        if candidate < tree.nodes[n].cost_to_come - EPS
            && !tree.is_ancestor(n, new_idx)
            && edge_free(new_pos, tree.nodes[n].position, env)
        {
            tree.reparent(n, new_idx);
            moved += 1;
        }
    }
    moved
}

/// Waypoints from the root to `goal_idx`, in forward order.
pub fn get_optimized_path(tree: &RrtTree, goal_idx: usize) -> Result<Vec<Point2>> {
    if goal_idx >= tree.len() {
        return Err(Error::InvalidState(format!(
            "node {goal_idx} is not in the tree"
        )));
    }
    let mut chain = vec![tree.nodes[goal_idx].position];
    let mut cur = goal_idx;
    while let Some(p) = tree.nodes[cur].parent {
        if p >= tree.len() || chain.len() > tree.len() {
            return Err(Error::InvalidState(format!(
                "broken parent chain at node {cur}"
            )));
        }
        chain.push(tree.nodes[p].position);
        cur = p;
    }
    if cur != 0 {
        return Err(Error::InvalidState(format!(
            "node {goal_idx} does not reach the root"
        )));
    }
    chain.reverse();
    Ok(chain)
}

/// What happened during one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extension {
    Inserted {
        index: usize,
        parent: usize,
        rewired: usize,
    },
    Rejected,
}

/// A tree node inside the goal region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoalCandidate {
    pub node: usize,
    /// The final segment to the exact target is collision-free.
    pub connects: bool,
    /// Length of the path this candidate yields.
    pub cost: f64,
}

/// Incremental planner state, steppable one iteration at a time.
pub struct RrtStar<'e> {
    env: &'e Environment,
    query: Query,
    params: RrtParams,
    tree: RrtTree,
    rng: PlannerRng,
    iteration: usize,
    goal_nodes: Vec<(usize, bool)>,
}

impl<'e> RrtStar<'e> {
    pub fn new(env: &'e Environment, query: Query, params: RrtParams) -> Result<Self> {
        params.validate()?;
        validate_query(env, &query).map_err(Error::InvalidQuery)?;
        let mut planner = Self {
            env,
            query,
            params,
            tree: RrtTree::new(query.start),
            rng: rng::seeded(params.rng_seed),
            iteration: 0,
            goal_nodes: Vec::new(),
        };
        planner.note_goal(0);
        Ok(planner)
    }

    pub fn tree(&self) -> &RrtTree {
        &self.tree
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn is_done(&self) -> bool {
        self.iteration >= self.params.iterations_num
    }

    fn note_goal(&mut self, idx: usize) {
        let pos = self.tree.nodes[idx].position;
        if dist(pos, self.query.target) <= self.params.min_threshold {
            let connects = pos == self.query.target || edge_free(pos, self.query.target, self.env);
            self.goal_nodes.push((idx, connects));
        }
    }

    pub fn step(&mut self) -> Extension {
        self.iteration += 1;
        let p_rand = random_sample(self.env.bounds(), &mut self.rng);
        let near = find_nearest(&self.tree, p_rand).expect("tree always holds the root");
        let p_near = self.tree.nodes[near].position;
        let p_new = steering(p_rand, p_near, self.params.step_size);
        if dist(p_new, p_near) <= EPS || !edge_free(p_near, p_new, self.env) {
            return Extension::Rejected;
        }
        let neighbors = get_neighbors(&self.tree, p_new, self.params.neighbor_radius);
        let parent = if neighbors.is_empty() {
            near
        } else {
            choose_parent(&self.tree, &neighbors, near, p_new, self.env)
        };
        let index = self.tree.insert(parent, p_new);
        let rewired = if neighbors.is_empty() {
            0
        } else {
            rewire(&mut self.tree, &neighbors, index, self.env)
        };
        self.note_goal(index);
        Extension::Inserted {
            index,
            parent,
            rewired,
        }
    }

    pub fn run(&mut self) {
        while !self.is_done() {
            self.step();
        }
    }

    /// Best goal-region node so far: candidates whose final segment reaches
    /// the target win over those that do not; within a class the lowest path
    /// cost wins, ties to the earliest insertion.
    pub fn best_goal(&self) -> Option<GoalCandidate> {
        let mut best: Option<GoalCandidate> = None;
        for &(node, connects) in &self.goal_nodes {
            let n = &self.tree.nodes[node];
            let cost = if connects {
                n.cost_to_come + dist(n.position, self.query.target)
            } else {
                n.cost_to_come
            };
            let better = match best {
                None => true,
                Some(b) => (connects && !b.connects) || (connects == b.connects && cost < b.cost),
            };
            if better {
                best = Some(GoalCandidate {
                    node,
                    connects,
                    cost,
                });
            }
        }
        best
    }

    fn path_for(&self, candidate: GoalCandidate) -> Path {
        let mut waypoints =
            get_optimized_path(&self.tree, candidate.node).expect("tree is consistent");
        let end = self.tree.nodes[candidate.node].position;
        if candidate.connects && end != self.query.target {
            waypoints.push(self.query.target);
        }
        if waypoints.len() < 2 {
            waypoints.push(self.query.target);
        }
        Path::new(waypoints).expect("tree positions are finite")
    }

    pub fn finish(self, elapsed_s: f64) -> PlanResult {
        let params = PlannerParams::RrtStar(self.params);
        let base = PlanResult {
            planner: PlannerKind::RrtStar,
            seed: self.params.rng_seed,
            feasible: false,
            path: None,
            best_attempt: None,
            length: 0.0,
            elapsed_s,
            iterations_used: self.iteration,
            closest_approach: 0.0,
            params,
            error: None,
        };
        if let Some(candidate) = self.best_goal() {
            let path = self.path_for(candidate);
            let closest_approach = dist(path.last(), self.query.target);
            return PlanResult {
                feasible: true,
                length: path.length(),
                path: Some(path),
                closest_approach,
                ..base
            };
        }
        let closest =
            find_nearest(&self.tree, self.query.target).expect("tree always holds the root");
        let closest_approach = dist(self.tree.nodes[closest].position, self.query.target);
        let mut waypoints = get_optimized_path(&self.tree, closest).expect("tree is consistent");
        if waypoints.len() < 2 {
            waypoints.push(waypoints[0]);
        }
        let attempt = Path::new(waypoints).expect("tree positions are finite");
        PlanResult {
            length: attempt.length(),
            best_attempt: Some(attempt),
            closest_approach,
            ..base
        }
    }
}

/// Runs the full iteration budget and extracts the best goal-region path.
pub fn plan_rrt_star(env: &Environment, query: &Query, params: &RrtParams) -> Result<PlanResult> {
    let mut planner = RrtStar::new(env, *query, *params)?;
    let clock = Instant::now();
    planner.run();
    let elapsed = clock.elapsed().as_secs_f64();
    Ok(planner.finish(elapsed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{Obstacle, DEFAULT_BOUNDS};
    use crate::geometry::Circle;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn chain(points: &[Point2]) -> RrtTree {
        let mut t = RrtTree::new(points[0]);
        for (i, &q) in points.iter().enumerate().skip(1) {
            t.insert(i - 1, q);
        }
        t
    }

    fn empty_env() -> Environment {
        Environment::empty(DEFAULT_BOUNDS).unwrap()
    }

    #[test]
    fn samples_are_deterministic_and_in_bounds() {
        let b = Bounds::new(0.0, 1.0, 0.0, 1.0);
        let mut a = rng::seeded(5);
        let mut c = rng::seeded(5);
        for _ in 0..100 {
            let s = random_sample(&b, &mut a);
            assert!(b.contains(s));
            assert_eq!(s, random_sample(&b, &mut c));
        }
    }

    #[test]
    fn sample_mean_is_centered() {
        let b = Bounds::new(-40.0, 40.0, -40.0, 40.0);
        let mut r = rng::seeded(11);
        let n = 10_000;
        let (mut sx, mut sy) = (0.0, 0.0);
        for _ in 0..n {
            let s = random_sample(&b, &mut r);
            sx += s.x;
            sy += s.y;
        }
        assert!((sx / n as f64).abs() < 2.0);
        assert!((sy / n as f64).abs() < 2.0);
    }

    #[test]
    fn nearest_examples() {
        assert_eq!(
            find_nearest(&RrtTree::new(p(0.0, 0.0)), p(5.0, 5.0)).unwrap(),
            0
        );
        let t = chain(&[p(0.0, 0.0), p(10.0, 0.0)]);
        assert_eq!(find_nearest(&t, p(4.0, 0.0)).unwrap(), 0);
        let t = chain(&[p(0.0, 0.0), p(4.0, 0.0)]);
        assert_eq!(find_nearest(&t, p(2.0, 0.0)).unwrap(), 0);
        assert!(matches!(
            find_nearest(&RrtTree::empty(), p(0.0, 0.0)),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn steering_examples() {
        assert_eq!(steering(p(10.0, 0.0), p(0.0, 0.0), 2.0), p(2.0, 0.0));
        assert_eq!(steering(p(1.0, 0.0), p(0.0, 0.0), 2.0), p(1.0, 0.0));
        let s = steering(p(3.0, 4.0), p(0.0, 0.0), 2.5);
        assert!((s.x - 1.5).abs() < 1e-12 && (s.y - 2.0).abs() < 1e-12);
        assert_eq!(steering(p(1.0, 1.0), p(1.0, 1.0), 2.0), p(1.0, 1.0));
    }

    #[test]
    fn edge_free_examples() {
        let env = empty_env();
        assert!(edge_free(p(-10.0, 0.0), p(10.0, 5.0), &env));
        let env = Environment::new(
            DEFAULT_BOUNDS,
            vec![Obstacle::Circle(Circle::new(p(0.0, 0.0), 2.0).unwrap())],
        )
        .unwrap();
        assert!(!edge_free(p(-5.0, 0.0), p(5.0, 0.0), &env));
        assert!(edge_free(p(-5.0, 2.0), p(5.0, 2.0), &env));
        assert!(!edge_free(p(-5.0, 0.0), p(-50.0, 0.0), &env));
    }

    #[test]
    fn neighbor_examples() {
        let t = RrtTree::new(p(0.0, 0.0));
        assert!(get_neighbors(&t, p(5.0, 0.0), 1.0).is_empty());
        let t = chain(&[p(0.0, 0.0), p(1.0, 0.0), p(5.0, 0.0)]);
        assert_eq!(get_neighbors(&t, p(0.5, 0.0), 1.0), vec![0, 1]);
        assert_eq!(get_neighbors(&t, p(0.5, 0.0), 1e6), vec![0, 1, 2]);
    }

    /// p_new = (0, 7); neighbors on the y axis give cost + edge of
    /// 1.5 + 8.5 = 10, 3 + 4 = 7 and 1 + 8 = 9.
    fn parent_choice_tree() -> (RrtTree, Vec<usize>, Point2) {
        let mut t = RrtTree::new(p(0.0, 0.0));
        let a = t.insert(0, p(0.0, -1.5));
        let b = t.insert(0, p(0.0, 3.0));
        let c = t.insert(0, p(0.0, -1.0));
        (t, vec![a, b, c], p(0.0, 7.0))
    }

    #[test]
    fn choose_parent_single_neighbor() {
        let t = RrtTree::new(p(0.0, 0.0));
        assert_eq!(choose_parent(&t, &[0], 0, p(1.0, 1.0), &empty_env()), 0);
    }

    #[test]
    fn choose_parent_picks_cheapest_free_neighbor() {
        let (t, neighbors, p_new) = parent_choice_tree();
        assert_eq!(
            choose_parent(&t, &neighbors, neighbors[0], p_new, &empty_env()),
            neighbors[1]
        );
    }

    #[test]
    fn choose_parent_falls_back_to_nearest() {
        let (t, neighbors, p_new) = parent_choice_tree();
        let env = Environment::new(
            DEFAULT_BOUNDS,
            vec![Obstacle::Circle(Circle::new(p(0.0, 5.0), 0.5).unwrap())],
        )
        .unwrap();
        assert_eq!(choose_parent(&t, &neighbors, 0, p_new, &env), 0);
    }

    /// root (0,0) -> a (4,3) -> n (8,0) gives n a cost of 10; m = (2,0)
    /// hangs off the root at cost 2 and reaches n at 2 + 6 = 8.
    fn rewire_tree() -> (RrtTree, usize, usize) {
        let mut t = RrtTree::new(p(0.0, 0.0));
        let a = t.insert(0, p(4.0, 3.0));
        let n = t.insert(a, p(8.0, 0.0));
        let m = t.insert(0, p(2.0, 0.0));
        (t, n, m)
    }

    #[test]
    fn rewire_noop_when_optimal() {
        let env = empty_env();
        let mut t = RrtTree::new(p(0.0, 0.0));
        let a = t.insert(0, p(2.0, 0.0));
        let before: Vec<f64> = t.nodes().iter().map(|n| n.cost_to_come).collect();
        assert_eq!(rewire(&mut t, &[0], a, &env), 0);
        assert_eq!(
            before,
            t.nodes().iter().map(|n| n.cost_to_come).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rewire_reparents_improvable_neighbor() {
        let (mut t, n, m) = rewire_tree();
        assert_eq!(t.node(n).cost_to_come, 10.0);
        assert_eq!(rewire(&mut t, &[n], m, &empty_env()), 1);
        assert_eq!(t.node(n).parent, Some(m));
        assert_eq!(t.node(n).cost_to_come, 8.0);
        assert!(t.check_invariants(1e-12).is_ok());
    }

    #[test]
    fn rewire_propagates_to_descendants() {
        let (mut t, n, m) = rewire_tree();
        let child = t.insert(n, p(9.0, 0.0));
        assert_eq!(t.node(child).cost_to_come, 11.0);
        rewire(&mut t, &[n], m, &empty_env());
        assert_eq!(t.node(child).cost_to_come, 9.0);
        assert!(t.children(1).is_empty());
    }

    #[test]
    fn rewire_respects_blocked_edge() {
        let (mut t, n, m) = rewire_tree();
        let env = Environment::new(
            DEFAULT_BOUNDS,
            vec![Obstacle::Circle(Circle::new(p(5.0, 0.0), 0.5).unwrap())],
        )
        .unwrap();
        assert_eq!(rewire(&mut t, &[n], m, &env), 0);
        assert_eq!(t.node(n).cost_to_come, 10.0);
    }

    #[test]
    fn optimized_path_examples() {
        let t = RrtTree::new(p(1.0, 1.0));
        assert_eq!(get_optimized_path(&t, 0).unwrap(), vec![p(1.0, 1.0)]);
        let t = chain(&[p(0.0, 0.0), p(2.0, 0.0), p(4.0, 0.0)]);
        let path = get_optimized_path(&t, 2).unwrap();
        assert_eq!(path, vec![p(0.0, 0.0), p(2.0, 0.0), p(4.0, 0.0)]);
        assert_eq!(crate::geometry::path_length(&path).unwrap(), 4.0);
        assert!(matches!(
            get_optimized_path(&t, 9),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn broken_chain_is_reported() {
        let mut t = chain(&[p(0.0, 0.0), p(2.0, 0.0)]);
        t.nodes[1].parent = Some(1);
        assert!(matches!(
            get_optimized_path(&t, 1),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn invalid_params_rejected() {
        let env = empty_env();
        let q = Query::new(p(0.0, 0.0), p(10.0, 0.0));
        let bad = RrtParams {
            neighbor_radius: 1.0,
            ..Default::default()
        };
        assert!(matches!(
            plan_rrt_star(&env, &q, &bad),
            Err(Error::InvalidParams(_))
        ));
        let bad = RrtParams {
            step_size: 0.0,
            ..Default::default()
        };
        assert!(plan_rrt_star(&env, &q, &bad).is_err());
    }

    #[test]
    fn invalid_query_rejected_before_planning() {
        let env = empty_env();
        let q = Query::new(p(0.0, 0.0), p(100.0, 0.0));
        assert!(matches!(
            plan_rrt_star(&env, &q, &RrtParams::default()),
            Err(Error::InvalidQuery(_))
        ));
    }
}
