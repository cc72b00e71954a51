use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathbench::PlannerKind;
use pathbench_cli::{cmd_bench, cmd_plan, cmd_render, cmd_table1, Overrides, INVALID};

#[derive(Parser)]
#[command(
    name = "pathbench",
    version,
    about = "RRT* vs particle-swarm path planning benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario config (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed; overrides the config and PATHBENCH_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; overrides the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write every elapsed time as 0 so repeated runs give identical files.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one planner once; exit 0 if feasible, 1 if not.
    Plan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "rrtstar")]
        planner: PlannerKind,
    },
    /// Run every configured planner over many seeds.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run the ten fixed start/target cases on the irregular preset.
    Table1 {
        #[command(flatten)]
        common: Common,
    },
    /// Draw an environment file and optional result files as SVG.
    Render {
        #[arg(long)]
        env: PathBuf,
        /// A result.json written by `plan`; may be repeated.
        #[arg(long)]
        result: Vec<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn overrides(c: Common, trials: Option<usize>) -> Overrides {
    Overrides {
        config: c.config,
        seed: c.seed,
        trials,
        out: c.out,
        jobs: c.jobs,
        no_timing: c.no_timing,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let outcome = match cli.command {
        Command::Plan { common, planner } => {
            cmd_plan(&overrides(common, None), planner, &mut stdout)
        }
        Command::Bench { common, trials } => cmd_bench(&overrides(common, trials), &mut stdout),
        Command::Table1 { common } => cmd_table1(&overrides(common, None), &mut stdout),
        Command::Render { env, result, out } => cmd_render(&env, &result, &out, &mut stdout),
    };
    match outcome {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INVALID as u8)
        }
    }
}
