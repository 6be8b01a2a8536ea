//! Serializable reports. Every number is copied from a library result; nothing
//! here recomputes an estimate.

use serde::Serialize;

use fastpts::pts::{FastPtsResult, PenaltyVector, PtsSolution};
use fastpts::PtsConfig;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PenaltySummary {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl PenaltySummary {
    pub fn of(pen: &PenaltyVector) -> Self {
        let mut v = pen.p.clone();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        };
        Self {
            min: v[0],
            median,
            max: v[n - 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub schema_version: u32,
    pub n: usize,
    pub p: usize,
    pub columns: Vec<String>,
    pub coefficients: Vec<f64>,
    pub sigma_hat: f64,
    pub penalties: PenaltySummary,
    /// 1-based row numbers.
    pub clean: Vec<usize>,
    pub outliers: Vec<usize>,
    pub reincluded: Vec<usize>,
    /// `L` of the final clean set.
    pub objective: f64,
    /// `L` of the best subset before reinclusion.
    pub search_objective: f64,
    pub iterations: usize,
    pub best_iteration: usize,
    pub seed: u64,
    pub config: PtsConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl FitReport {
    pub fn new(
        result: &FastPtsResult,
        columns: Vec<String>,
        cfg: &PtsConfig,
        wall_time_s: Option<f64>,
    ) -> Self {
        let sol = &result.solution;
        Self {
            schema_version: SCHEMA_VERSION,
            n: sol.n(),
            p: sol.beta.len(),
            columns,
            coefficients: sol.beta.clone(),
            sigma_hat: result.penalties.sigma_hat,
            penalties: PenaltySummary::of(&result.penalties),
            clean: sol.clean.one_based(),
            outliers: sol.outliers.one_based(),
            reincluded: sol.reincluded.one_based(),
            objective: sol.objective,
            search_objective: result.search.solution.objective,
            iterations: cfg.max_iter,
            best_iteration: result.search.best_iteration,
            seed: cfg.seed,
            config: cfg.clone(),
            wall_time_s,
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s += &format!("n = {}, p = {}, seed = {}\n", self.n, self.p, self.seed);
        s += "coefficients:\n";
        for (name, b) in self.columns.iter().zip(&self.coefficients) {
            s += &format!("  {name:<14} {b:>14.6}\n");
        }
        s += &format!("sigma_hat: {:.6}\n", self.sigma_hat);
        s += &format!(
            "penalties: min {:.6}  median {:.6}  max {:.6}\n",
            self.penalties.min, self.penalties.median, self.penalties.max
        );
        s += &format!("outliers ({}): {}\n", self.outliers.len(), list(&self.outliers));
        s += &format!("reincluded ({}): {}\n", self.reincluded.len(), list(&self.reincluded));
        s += &format!(
            "objective: {:.6} (search {:.6}, best at iteration {} of {})\n",
            self.objective, self.search_objective, self.best_iteration, self.iterations
        );
        if let Some(t) = self.wall_time_s {
            s += &format!("wall time: {t:.3} s\n");
        }
        s
    }
}

pub fn list(v: &[usize]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub name: String,
    pub n: usize,
    pub p: usize,
    pub true_outliers: Vec<usize>,
    pub detected: Vec<usize>,
    /// Percentage of the true outliers that were flagged.
    pub pct_identified: f64,
    /// Clean rows that were flagged.
    pub swamped: Vec<usize>,
    pub pct_swamped: f64,
    pub exact_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cpu_time_s: Option<f64>,
}

impl BenchmarkRow {
    pub fn new(
        name: &str,
        sol: &PtsSolution,
        p: usize,
        true_outliers: Vec<usize>,
        cpu_time_s: Option<f64>,
    ) -> Self {
        let detected = sol.outliers.one_based();
        let hit = true_outliers.iter().filter(|i| detected.contains(i)).count();
        let swamped: Vec<usize> = detected
            .iter()
            .copied()
            .filter(|i| !true_outliers.contains(i))
            .collect();
        let n = sol.n();
        let n_clean = n - true_outliers.len();
        Self {
            name: name.to_string(),
            n,
            p,
            pct_identified: 100.0 * hit as f64 / true_outliers.len().max(1) as f64,
            pct_swamped: 100.0 * swamped.len() as f64 / n_clean.max(1) as f64,
            exact_match: detected == true_outliers,
            true_outliers,
            detected,
            swamped,
            cpu_time_s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub schema_version: u32,
    pub seed: u64,
    pub config: PtsConfig,
    pub cases: Vec<BenchmarkRow>,
}

impl BenchmarkReport {
    pub fn render(&self) -> String {
        let mut s = format!(
            "{:<10} {:>3} {:>2}  {:<24} {:<24} {:>6} {:>7} {:>8}\n",
            "data set", "n", "p", "true outliers", "detected", "%ident", "%swamp", "time (s)"
        );
        for r in &self.cases {
            s += &format!(
                "{:<10} {:>3} {:>2}  {:<24} {:<24} {:>6.1} {:>7.1} {:>8}\n",
                r.name,
                r.n,
                r.p,
                list(&r.true_outliers),
                list(&r.detected),
                r.pct_identified,
                r.pct_swamped,
                r.cpu_time_s.map_or("-".into(), |t| format!("{t:.3}")),
            );
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub schema_version: u32,
    pub design: String,
    pub n: usize,
    pub p: usize,
    /// Clustered design only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contamination: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    pub replications: usize,
    pub seed: u64,
    pub config: PtsConfig,
    /// Clustered design only: replications closer to the outlier fit than to the truth.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pct_wrong: Option<f64>,
    pub mean_mse: f64,
    pub coef_mean: Vec<f64>,
    pub coef_mse: Vec<f64>,
    /// Replications where some contaminated row that breaks the model stayed in the clean set.
    pub pct_missed: f64,
    pub mean_flagged_fraction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_cpu_time_s: Option<f64>,
}

impl SimReport {
    pub fn render(&self) -> String {
        let mut s = format!(
            "design {} n = {} p = {} reps = {} seed = {}",
            self.design, self.n, self.p, self.replications, self.seed
        );
        if let (Some(e), Some(sl)) = (self.contamination, self.slope) {
            s += &format!(" contamination = {e} slope = {sl}");
        }
        s.push('\n');
        if let Some(w) = self.pct_wrong {
            s += &format!("%wrong: {w:.1}\n");
        }
        s += &format!("MSE: {:.6}\n", self.mean_mse);
        s += "coefficient  mean        MSE\n";
        for (j, (m, e)) in self.coef_mean.iter().zip(&self.coef_mse).enumerate() {
            s += &format!("  b{j:<9} {m:>10.5} {e:>10.5}\n");
        }
        s += &format!("%missed: {:.1}\n", self.pct_missed);
        s += &format!("mean flagged fraction: {:.4}\n", self.mean_flagged_fraction);
        if let Some(t) = self.mean_cpu_time_s {
            s += &format!("mean time: {t:.3} s\n");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub exact_objective: f64,
    pub fast_objective: f64,
    /// `fast − exact`; never negative.
    pub gap: f64,
    pub relative_gap: f64,
    pub exact_outliers: Vec<usize>,
    pub fast_outliers: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_time_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fast_time_s: Option<f64>,
}

impl OracleReport {
    pub fn render(&self) -> String {
        let t = |v: Option<f64>| v.map_or(String::new(), |t| format!(" ({t:.3} s)"));
        format!(
            "exact objective: {:.9}{}\nfast objective:  {:.9}{}\ngap: {:.3e} (relative {:.3e})\nexact outliers: {}\nfast outliers:  {}\n",
            self.exact_objective,
            t(self.exact_time_s),
            self.fast_objective,
            t(self.fast_time_s),
            self.gap,
            self.relative_gap,
            list(&self.exact_outliers),
            list(&self.fast_outliers),
        )
    }
}
