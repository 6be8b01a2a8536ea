use std::path::Path;
use std::time::Instant;

use clap::Args;

use fastpts::datagen::{
    coef_stats, eval_run, gen_barrera_yohai, gen_mixed_contamination, load_benchmark, missed_any,
    summarize, MixedSpec, SimSample, SimSpec, BENCHMARK_NAMES,
};
use fastpts::pts::{compute_penalties, exact_pts, fast_pts_detailed, fast_pts_search};
use fastpts::linalg::ols_fit;
use fastpts::{Dataset, PtsConfig, PtsError, SubsetIndex};

use crate::input::{read_csv, DataError, Table};
use crate::report::{BenchmarkReport, BenchmarkRow, FitReport, OracleReport, SimReport};

/// Estimator flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct PtsArgs {
    /// Cut-off c; rows cost (c·σ̂)² scaled by leverage to delete.
    #[arg(long, default_value_t = 2.0)]
    pub cutoff: f64,
    /// Construction randomness in [0, 1]; 0 is purely greedy.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Lower bound on every penalty.
    #[arg(long, default_value_t = 1e-12)]
    pub epsilon: f64,
    /// Threshold on |studentized predicted residual| for reinclusion.
    #[arg(long, default_value_t = 2.0)]
    pub t_reinclude: f64,
    #[arg(long, default_value_t = 500)]
    pub lts_starts: usize,
    #[arg(long, default_value_t = 500)]
    pub mcd_starts: usize,
}

impl PtsArgs {
    pub fn config(&self) -> PtsConfig {
        PtsConfig {
            cutoff_c: self.cutoff,
            alpha_greed: self.alpha,
            max_iter: self.max_iter,
            seed: self.seed,
            epsilon_floor: self.epsilon,
            t_reinclude: self.t_reinclude,
            lts_starts: self.lts_starts,
            mcd_starts: self.mcd_starts,
        }
    }
}

impl Default for PtsArgs {
    fn default() -> Self {
        let c = PtsConfig::default();
        Self {
            cutoff: c.cutoff_c,
            alpha: c.alpha_greed,
            max_iter: c.max_iter,
            seed: c.seed,
            epsilon: c.epsilon_floor,
            t_reinclude: c.t_reinclude,
            lts_starts: c.lts_starts,
            mcd_starts: c.mcd_starts,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Data(DataError),
    Pts(PtsError),
}

impl CliError {
    /// 2 for bad input or flags, 3 for a rank-deficient design, 4 for an
    /// enumeration over budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Data(_) => 2,
            CliError::Pts(e) => match e {
                PtsError::RankDeficient { .. } => 3,
                PtsError::BudgetExceeded { .. } => 4,
                PtsError::InvalidConfig(_)
                | PtsError::InvalidDimensions(_)
                | PtsError::UnknownName(_) => 2,
                _ => 1,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Data(e) => write!(f, "data error: {e}"),
            CliError::Pts(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Data(e)
    }
}

impl From<PtsError> for CliError {
    fn from(e: PtsError) -> Self {
        CliError::Pts(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_secs_f64())
}

/// Rejects designs that are rank deficient even on all rows.
fn check_rank(data: &Dataset) -> CliResult<()> {
    ols_fit(data, &SubsetIndex::full(data.n()))?;
    Ok(())
}

pub fn fit_table(table: &Table, cfg: &PtsConfig, timing: bool) -> CliResult<FitReport> {
    check_rank(&table.dataset)?;
    let (result, secs) = timed(|| fast_pts_detailed(&table.dataset, cfg));
    Ok(FitReport::new(&result?, table.columns.clone(), cfg, timing.then_some(secs)))
}

pub fn cmd_fit(path: &Path, intercept: bool, cfg: &PtsConfig, timing: bool) -> CliResult<FitReport> {
    let table = read_csv(path, intercept)?;
    fit_table(&table, cfg, timing)
}

pub fn cmd_benchmark(case: Option<&str>, cfg: &PtsConfig, timing: bool) -> CliResult<BenchmarkReport> {
    let names: Vec<&str> = match case {
        Some(c) => vec![c],
        None => BENCHMARK_NAMES.to_vec(),
    };
    let mut cases = Vec::with_capacity(names.len());
    for name in names {
        let case = load_benchmark(name)?;
        let (result, secs) = timed(|| fast_pts_detailed(&case.dataset, cfg));
        cases.push(BenchmarkRow::new(
            case.name,
            &result?.solution,
            case.dataset.p(),
            case.true_outlier_labels(),
            timing.then_some(secs),
        ));
    }
    Ok(BenchmarkReport {
        schema_version: crate::report::SCHEMA_VERSION,
        seed: cfg.seed,
        config: cfg.clone(),
        cases,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Design {
    /// Clean Gaussian rows plus a cluster of identical leverage points.
    Clustered,
    /// 6 bad leverage, 4 good leverage and 6 vertical outliers among 50.
    Mixed,
    /// 10 bad leverage and 6 vertical outliers among 50.
    MixedBad,
}

impl Design {
    pub fn name(self) -> &'static str {
        match self {
            Design::Clustered => "clustered",
            Design::Mixed => "mixed",
            Design::MixedBad => "mixed-bad",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    #[arg(long, value_enum, default_value_t = Design::Clustered)]
    pub design: Design,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Coefficients including the intercept.
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Fraction of contaminated rows.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 1.0)]
    pub slope: f64,
    #[arg(long, default_value_t = 50)]
    pub reps: usize,
    /// Seed of the data generator; the estimator uses --seed.
    #[arg(long, default_value_t = 0)]
    pub data_seed: u64,
}

pub fn cmd_simulate(sim: &SimArgs, cfg: &PtsConfig, timing: bool) -> CliResult<SimReport> {
    if sim.reps == 0 {
        return Err(PtsError::InvalidConfig("at least one replication".into()).into());
    }
    let spec = SimSpec {
        replications: sim.reps,
        seed: sim.data_seed,
        ..SimSpec::new(sim.n, sim.p, sim.eps, sim.slope)
    };
    let mixed = match sim.design {
        Design::Clustered => {
            spec.validate()?;
            None
        }
        Design::Mixed => Some(MixedSpec::with_good_leverage()),
        Design::MixedBad => Some(MixedSpec::bad_leverage_only()),
    };
    let sample = |rep: usize| -> CliResult<SimSample> {
        Ok(match &mixed {
            None => gen_barrera_yohai(&spec, rep)?,
            Some(m) => gen_mixed_contamination(m, sim.data_seed, rep)?,
        })
    };

    let mut evals = Vec::with_capacity(sim.reps);
    let mut betas = Vec::with_capacity(sim.reps);
    let (mut missed, mut flagged, mut secs) = (0usize, 0.0, 0.0);
    let mut dims = (0, 0);
    let mut beta_true = Vec::new();
    for rep in 0..sim.reps {
        let s = sample(rep)?;
        dims = (s.dataset.n(), s.dataset.p());
        let (result, t) = timed(|| fast_pts_detailed(&s.dataset, cfg));
        let sol = result?.solution;
        secs += t;
        evals.push(eval_run(&sol.beta, &s.beta_true, sim.slope));
        missed += usize::from(missed_any(&sol.clean, &s.bad));
        flagged += sol.flagged_fraction();
        betas.push(sol.beta);
        beta_true = s.beta_true;
    }
    let r = sim.reps as f64;
    let summary = summarize(&evals);
    let coefs = coef_stats(&betas, &beta_true);
    let clustered = mixed.is_none();
    Ok(SimReport {
        schema_version: crate::report::SCHEMA_VERSION,
        design: sim.design.name().to_string(),
        n: dims.0,
        p: dims.1,
        contamination: clustered.then_some(sim.eps),
        slope: clustered.then_some(sim.slope),
        replications: sim.reps,
        seed: sim.data_seed,
        config: cfg.clone(),
        pct_wrong: clustered.then_some(summary.pct_wrong),
        mean_mse: summary.mean_mse,
        coef_mean: coefs.mean,
        coef_mse: coefs.mse,
        pct_missed: 100.0 * missed as f64 / r,
        mean_flagged_fraction: flagged / r,
        mean_cpu_time_s: timing.then_some(secs / r),
    })
}

pub fn oracle_dataset(
    data: &Dataset,
    cfg: &PtsConfig,
    budget: u128,
    timing: bool,
) -> CliResult<OracleReport> {
    let needed = if data.n() >= 127 { u128::MAX } else { 1u128 << data.n() };
    if needed > budget {
        return Err(PtsError::BudgetExceeded { needed, budget }.into());
    }
    check_rank(data)?;
    let pen = compute_penalties(data, cfg)?;
    let (exact, te) = timed(|| exact_pts(data, &pen, budget));
    let (fast, tf) = timed(|| fast_pts_search(data, &pen, cfg));
    let (exact, fast) = (exact?, fast?.solution);
    let gap = fast.objective - exact.objective;
    Ok(OracleReport {
        schema_version: crate::report::SCHEMA_VERSION,
        n: data.n(),
        p: data.p(),
        seed: cfg.seed,
        exact_objective: exact.objective,
        fast_objective: fast.objective,
        gap,
        relative_gap: if exact.objective > 0.0 { gap / exact.objective } else { gap },
        exact_outliers: exact.outliers.one_based(),
        fast_outliers: fast.outliers.one_based(),
        exact_time_s: timing.then_some(te),
        fast_time_s: timing.then_some(tf),
    })
}

pub fn cmd_oracle(
    path: &Path,
    intercept: bool,
    cfg: &PtsConfig,
    budget: u128,
    timing: bool,
) -> CliResult<OracleReport> {
    let table = read_csv(path, intercept)?;
    oracle_dataset(&table.dataset, cfg, budget, timing)
}

/// Writes `<name>.csv` for every benchmark into `dir`; returns the paths.
pub fn cmd_export_benchmarks(dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for name in BENCHMARK_NAMES {
        let case = load_benchmark(name).expect("known name");
        let path = dir.join(format!("{name}.csv"));
        std::fs::write(&path, case.to_csv())?;
        out.push(path);
    }
    Ok(out)
}
