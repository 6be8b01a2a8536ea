use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fastpts::pts::EXACT_PTS_BUDGET;

use crate::commands::{
    cmd_benchmark, cmd_export_benchmarks, cmd_fit, cmd_oracle, cmd_simulate, CliError, PtsArgs,
    SimArgs,
};

/// Robust regression by penalized trimmed squares.
#[derive(Debug, Parser)]
#[command(name = "fastpts", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub pts: PtsArgs,
    /// Do not prepend a constant column to the design.
    #[arg(long)]
    pub no_intercept: bool,
    /// Machine-readable output on stdout.
    #[arg(long)]
    pub json: bool,
    /// Include timings in the JSON output (always shown in text output).
    #[arg(long)]
    pub timing: bool,
}

impl Common {
    fn timing(&self) -> bool {
        self.timing || !self.json
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a CSV file whose last column is the response.
    Fit {
        csv: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the embedded benchmark data sets.
    Benchmark {
        /// Only this case (telephone, stars, wood, hawkins, hadi).
        #[arg(long)]
        case: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo study on a synthetic contamination design.
    Simulate {
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the heuristic with exhaustive enumeration on the same penalties.
    Oracle {
        csv: PathBuf,
        /// Largest number of subsets to enumerate.
        #[arg(long, default_value_t = EXACT_PTS_BUDGET)]
        budget: u128,
        #[command(flatten)]
        common: Common,
    },
    /// Write the embedded benchmark data sets as CSV files.
    ExportBenchmarks { dir: PathBuf },
}

fn emit<T: Serialize>(report: &T, json: bool, text: impl FnOnce(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text(report)
    }
}

/// Number of worker threads requested through `PTS_THREADS`; 0 or unset
/// means one per core.
pub fn thread_count() -> Result<usize, String> {
    match std::env::var("PTS_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("PTS_THREADS must be a non-negative integer, got `{v}`")),
    }
}

/// Runs a command and returns its stdout, or an exit code with a message.
pub fn run(cli: &Cli) -> Result<String, (u8, String)> {
    let threads = thread_count().map_err(|m| (2, m))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| (1, e.to_string()))?;
    pool.install(|| dispatch(&cli.command))
}

fn fail(e: CliError) -> (u8, String) {
    (e.exit_code() as u8, e.to_string())
}

fn dispatch(command: &Command) -> Result<String, (u8, String)> {
    match command {
        Command::Fit { csv, common } => {
            let cfg = common.pts.config();
            let r = cmd_fit(csv, !common.no_intercept, &cfg, common.timing()).map_err(fail)?;
            Ok(emit(&r, common.json, |r| r.render()))
        }
        Command::Benchmark { case, common } => {
            let cfg = common.pts.config();
            let r = cmd_benchmark(case.as_deref(), &cfg, common.timing()).map_err(fail)?;
            Ok(emit(&r, common.json, |r| r.render()))
        }
        Command::Simulate { sim, common } => {
            let cfg = common.pts.config();
            let r = cmd_simulate(sim, &cfg, common.timing()).map_err(fail)?;
            Ok(emit(&r, common.json, |r| r.render()))
        }
        Command::Oracle { csv, budget, common } => {
            let cfg = common.pts.config();
            let r = cmd_oracle(csv, !common.no_intercept, &cfg, *budget, common.timing())
                .map_err(fail)?;
            Ok(emit(&r, common.json, |r| r.render()))
        }
        Command::ExportBenchmarks { dir } => {
            let paths = cmd_export_benchmarks(dir).map_err(|e| (1, e.to_string()))?;
            Ok(paths.iter().map(|p| format!("{}\n", p.display())).collect())
        }
    }
}
