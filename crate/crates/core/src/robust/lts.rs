//! Least trimmed squares: C-step approximation and exhaustive enumeration.

use rand::seq::index::sample;
use rand::Rng as _;
use serde::Serialize;

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::{ols_fit, RegressionFit, SubsetIndex};
use crate::rng::{Domain, Rng};
use crate::robust::cstep::{self, smallest_k, CStepState, Concentration, ConcentrationOptions};

/// Default enumeration budget for [`lts_exact`].
pub const LTS_EXACT_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LtsResult {
    pub beta: Vec<f64>,
    /// The `coverage` rows with the smallest squared residuals under `beta`.
    pub subset: SubsetIndex,
    pub coverage: usize,
    /// Sum of the `coverage` smallest squared residuals.
    pub objective: f64,
}

/// `⌊(n + p + 1) / 2⌋`, the coverage with maximal breakdown.
pub fn default_coverage(n: usize, p: usize) -> usize {
    (n + p + 1) / 2
}

fn check_coverage(data: &Dataset, k: usize) -> Result<()> {
    if k < data.p() || k > data.n() {
        return Err(PtsError::InvalidConfig(format!(
            "coverage {k} outside [p, n] = [{}, {}]",
            data.p(),
            data.n()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct LtsState {
    fit: RegressionFit,
}

impl CStepState for LtsState {
    fn objective(&self) -> f64 {
        self.fit.rss
    }

    fn subset(&self) -> &SubsetIndex {
        &self.fit.subset
    }
}

struct LtsProblem<'a> {
    data: &'a Dataset,
    k: usize,
}

impl LtsProblem<'_> {
    fn concentrate_from(&self, residuals: &[f64]) -> Option<LtsState> {
        let sq: Vec<f64> = residuals.iter().map(|r| r * r).collect();
        let subset = smallest_k(&sq, self.k);
        ols_fit(self.data, &subset).ok().map(|fit| LtsState { fit })
    }
}

impl Concentration for LtsProblem<'_> {
    type State = LtsState;

    fn start(&self, rng: &mut Rng) -> Option<LtsState> {
        let fit = elemental_fit(self.data, rng)?;
        self.concentrate_from(&fit.residuals)
    }

    fn step(&self, state: &LtsState) -> Option<LtsState> {
        self.concentrate_from(&state.fit.residuals)
    }
}

/// Draws `p + 1` rows; while the draw is rank deficient, adds random further rows.
fn elemental_fit(data: &Dataset, rng: &mut Rng) -> Option<RegressionFit> {
    let n = data.n();
    let m = (data.p() + 1).min(n);
    let mut rows = sample(rng, n, m).into_vec();
    rows.sort_unstable();
    let mut subset = SubsetIndex::from_sorted_unchecked(rows);
    loop {
        if let Ok(fit) = ols_fit(data, &subset) {
            return Some(fit);
        }
        if subset.len() == n {
            return None;
        }
        let rest = subset.complement(n);
        let pick = rest.as_slice()[rng.random_range(0..rest.len())];
        subset = subset.with(pick);
    }
}

fn into_result(state: LtsState, k: usize) -> LtsResult {
    LtsResult {
        beta: state.fit.beta,
        subset: state.fit.subset,
        coverage: k,
        objective: state.fit.rss,
    }
}

/// Approximate LTS by random elemental starts refined with C-steps.
pub fn lts_fit(data: &Dataset, coverage: usize, n_starts: usize, seed: u64) -> Result<LtsResult> {
    lts_fit_with(data, coverage, &ConcentrationOptions::with_starts(n_starts), seed)
}

pub fn lts_fit_with(
    data: &Dataset,
    coverage: usize,
    opts: &ConcentrationOptions,
    seed: u64,
) -> Result<LtsResult> {
    check_coverage(data, coverage)?;
    let problem = LtsProblem { data, k: coverage };
    cstep::two_stage(&problem, opts, seed, Domain::LtsStart)
        .map(|(st, _)| into_result(st, coverage))
        .ok_or_else(|| {
            PtsError::DegenerateData(format!(
                "no full-rank {coverage}-subset reached from any start"
            ))
        })
}

/// C-steps from a given `coverage`-subset, returning the objective trace.
pub fn lts_concentrate(
    data: &Dataset,
    start: &SubsetIndex,
    max_steps: usize,
) -> Result<(LtsResult, Vec<f64>)> {
    let k = start.len();
    check_coverage(data, k)?;
    let problem = LtsProblem { data, k };
    let state = LtsState {
        fit: ols_fit(data, start)?,
    };
    let mut trace = Vec::new();
    let (st, _) = cstep::concentrate(&problem, state, max_steps, Some(&mut trace));
    Ok((into_result(st, k), trace))
}

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Global LTS optimum by enumerating every `coverage`-subset.
pub fn lts_exact(data: &Dataset, coverage: usize, budget: u128) -> Result<LtsResult> {
    check_coverage(data, coverage)?;
    let n = data.n();
    let needed = binomial(n, coverage);
    if needed > budget {
        return Err(PtsError::BudgetExceeded { needed, budget });
    }
    let mut idx: Vec<usize> = (0..coverage).collect();
    let mut best: Option<RegressionFit> = None;
    loop {
        let subset = SubsetIndex::from_sorted_unchecked(idx.clone());
        if let Ok(fit) = ols_fit(data, &subset) {
            if best.as_ref().is_none_or(|b| fit.rss < b.rss) {
                best = Some(fit);
            }
        }
        // Next combination in lexicographic order.
        let Some(pos) = (0..coverage).rev().find(|&i| idx[i] != i + n - coverage) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..coverage {
            idx[j] = idx[j - 1] + 1;
        }
    }
    best.map(|fit| into_result(LtsState { fit }, coverage))
        .ok_or_else(|| PtsError::DegenerateData("every subset is rank deficient".into()))
}
