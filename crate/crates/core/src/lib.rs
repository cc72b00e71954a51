//! Path planning in 2D workspaces with circular and polygonal obstacles.
//!
//! Two planners share one collision model: [`rrtstar`] grows an
//! asymptotically optimal random tree, [`pso`] optimizes a fixed number of
//! waypoints with a particle swarm. [`benchmark`] runs them over seeded
//! random worlds and the fixed irregular preset, and cross-checks them against
//! an 8-connected grid shortest path.

pub mod audit;
pub mod benchmark;
pub mod environment;
pub mod error;
pub mod geometry;
pub mod pso;
pub mod render;
mod result;
pub mod rng;
pub mod rrtstar;

pub use environment::{
    generate_random_env, irregular_preset, validate_query, Environment, EnvironmentDoc, Obstacle,
    Query, RandomEnvParams,
};
pub use error::{Error, Result};
pub use geometry::{dist, path_length, point_free, Bounds, Path, Point2, Segment};
pub use pso::{plan_pso, PsoParams};
pub use result::{PlanResult, PlannerKind, PlannerParams};
pub use rrtstar::{plan_rrt_star, RrtParams};
