use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::Path;
use crate::pso::PsoParams;
use crate::rrtstar::RrtParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlannerKind {
    RrtStar,
    Pso,
}

impl PlannerKind {
    pub const ALL: [PlannerKind; 2] = [PlannerKind::RrtStar, PlannerKind::Pso];

    pub fn id(self) -> &'static str {
        match self {
            PlannerKind::RrtStar => "rrtstar",
            PlannerKind::Pso => "pso",
        }
    }
}

impl fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for PlannerKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rrtstar" => Ok(PlannerKind::RrtStar),
            "pso" => Ok(PlannerKind::Pso),
            other => Err(format!(
                "unknown planner `{other}` (expected rrtstar or pso)"
            )),
        }
    }
}

/// Parameter snapshot stored alongside every result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "planner", rename_all = "lowercase")]
pub enum PlannerParams {
    RrtStar(RrtParams),
    Pso(PsoParams),
}

impl PlannerParams {
    pub fn kind(&self) -> PlannerKind {
        match self {
            PlannerParams::RrtStar(_) => PlannerKind::RrtStar,
            PlannerParams::Pso(_) => PlannerKind::Pso,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            PlannerParams::RrtStar(p) => p.rng_seed,
            PlannerParams::Pso(p) => p.rng_seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            PlannerParams::RrtStar(p) => PlannerParams::RrtStar(RrtParams {
                rng_seed: seed,
                ..*p
            }),
            PlannerParams::Pso(p) => PlannerParams::Pso(PsoParams {
                rng_seed: seed,
                ..*p
            }),
        }
    }
}

/// Outcome of one planning call.
///
/// `path` is present iff the run is feasible. `length` is always the length
/// of the best attempt (the returned path when feasible, otherwise the
/// partial path reported in `best_attempt`), so infeasible runs still carry
/// a number; statistics exclude them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanResult {
    pub planner: PlannerKind,
    pub seed: u64,
    pub feasible: bool,
    pub path: Option<Path>,
    pub best_attempt: Option<Path>,
    pub length: f64,
    pub elapsed_s: f64,
    pub iterations_used: usize,
    pub closest_approach: f64,
    pub params: PlannerParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl PlanResult {
    /// Record for a run that could not start (for example an invalid query).
    /// `closest_approach` is the straight-line start-target distance.
    pub fn errored(params: &PlannerParams, closest_approach: f64, message: String) -> Self {
        Self {
            planner: params.kind(),
            seed: params.seed(),
            feasible: false,
            path: None,
            best_attempt: None,
            length: 0.0,
            elapsed_s: 0.0,
            iterations_used: 0,
            closest_approach,
            params: params.clone(),
            error: Some(message),
        }
    }

    /// Path to draw: the feasible path, else the best partial attempt.
    pub fn display_path(&self) -> Option<&Path> {
        self.path.as_ref().or(self.best_attempt.as_ref())
    }
}
