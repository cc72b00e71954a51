//! Scenario configuration files.

use std::path::{Path as FsPath, PathBuf};

use anyhow::{bail, Context, Result};
use pathbench::benchmark::EnvSource;
use pathbench::environment::{irregular_preset, EnvironmentDoc, RandomEnvParams};
use pathbench::geometry::Point2;
use pathbench::{Environment, PlannerKind, PlannerParams, PsoParams, Query, RrtParams};
use serde::{Deserialize, Serialize};

pub const SEED_ENV_VAR: &str = "PATHBENCH_SEED";

pub const DEFAULT_QUERY: Query = Query::new(Point2::new(20.0, -15.0), Point2::new(-25.0, 15.0));

/// Where the workspace comes from. Exactly one key per section.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum EnvironmentSpec {
    Preset(String),
    /// Path to an environment file, relative to the config file.
    File(PathBuf),
    /// A fresh random world per seed.
    Random(RandomEnvParams),
    Inline(EnvironmentDoc),
}

fn default_planners() -> Vec<PlannerKind> {
    PlannerKind::ALL.to_vec()
}

fn default_trials() -> usize {
    50
}

fn default_base_seed() -> u64 {
    1000
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Absent: a random world for `plan`/`bench`, `irregular-a` for `table1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentSpec>,
    /// Overrides any query stored with the environment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<Query>,
    #[serde(default)]
    pub rrtstar: RrtParams,
    #[serde(default)]
    pub pso: PsoParams,
    #[serde(default = "default_planners")]
    pub planners: Vec<PlannerKind>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_base_seed")]
    pub base_seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Safety margin added around every obstacle.
    #[serde(default)]
    pub inflation: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            environment: None,
            query: None,
            rrtstar: RrtParams::default(),
            pso: PsoParams::default(),
            planners: default_planners(),
            trials: default_trials(),
            base_seed: default_base_seed(),
            output: default_output(),
            inflation: 0.0,
        }
    }
}

/// Environment plus the query to plan for, after resolving presets and files.
pub struct Scenario {
    pub source: EnvSource,
    pub query: Query,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs always serialize")
    }

    /// Reads `path`, resolving `file` environments against its directory.
    pub fn load(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut config =
            Self::from_json(&text).with_context(|| format!("parsing config {}", path.display()))?;
        if let Some(EnvironmentSpec::File(file)) = &mut config.environment {
            if file.is_relative() {
                if let Some(dir) = path.parent() {
                    *file = dir.join(&*file);
                }
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.rrtstar.validate()?;
        self.pso.validate()?;
        if self.trials == 0 {
            bail!("trials must be >= 1");
        }
        if self.planners.is_empty() {
            bail!("planners must list at least one planner");
        }
        if !(self.inflation.is_finite() && self.inflation >= 0.0) {
            bail!("inflation must be >= 0, got {}", self.inflation);
        }
        match &self.environment {
            Some(EnvironmentSpec::File(f)) if !f.is_file() => {
                bail!("environment file {} does not exist", f.display())
            }
            Some(EnvironmentSpec::Random(p)) => p.validate()?,
            _ => {}
        }
        Ok(())
    }

    /// Parameter snapshot for `kind`, reseeded with `seed`.
    pub fn planner_params(&self, kind: PlannerKind, seed: u64) -> PlannerParams {
        match kind {
            PlannerKind::RrtStar => PlannerParams::RrtStar(RrtParams {
                rng_seed: seed,
                ..self.rrtstar
            }),
            PlannerKind::Pso => PlannerParams::Pso(PsoParams {
                rng_seed: seed,
                ..self.pso
            }),
        }
    }

    pub fn scenario(&self, fallback: &EnvironmentSpec) -> Result<Scenario> {
        let spec = self.environment.as_ref().unwrap_or(fallback);
        let (source, stored) = match spec {
            EnvironmentSpec::Random(params) => (
                EnvSource::Random {
                    params: *params,
                    inflation: self.inflation,
                },
                None,
            ),
            EnvironmentSpec::Preset(name) => {
                let (env, q) = irregular_preset(name)?;
                (
                    EnvSource::Fixed(env.with_inflation(self.inflation)?),
                    Some(q),
                )
            }
            EnvironmentSpec::File(path) => {
                let (env, q) = load_environment(path)?;
                (EnvSource::Fixed(env.with_inflation(self.inflation)?), q)
            }
            EnvironmentSpec::Inline(doc) => {
                let (env, q) = doc.clone().into_environment()?;
                (EnvSource::Fixed(env.with_inflation(self.inflation)?), q)
            }
        };
        let query = self.query.or(stored).unwrap_or(DEFAULT_QUERY);
        Ok(Scenario { source, query })
    }
}

pub fn load_environment(path: &FsPath) -> Result<(Environment, Option<Query>)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading environment {}", path.display()))?;
    let doc = EnvironmentDoc::from_json(&text)
        .with_context(|| format!("parsing environment {}", path.display()))?;
    Ok(doc.into_environment()?)
}

/// Seed precedence: config, then the environment variable, then the flag.
pub fn resolve_seed(config_seed: u64, env_value: Option<&str>, flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match env_value {
        Some(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV_VAR}={v:?} is not an unsigned integer")),
        None => Ok(config_seed),
    }
}
