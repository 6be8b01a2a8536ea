use rayon::prelude::*;
use serde::Serialize;

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::SubsetIndex;
use crate::pts::construct::construct;
use crate::pts::local_search::{local_search_detailed, LocalSearchOutcome, SearchStatus};
use crate::pts::penalties::{compute_penalties_detailed, RobustInit};
use crate::pts::reinclude::reinclude;
use crate::pts::{PenaltyVector, PtsConfig, PtsSolution};
use crate::rng::{substream, Domain};

/// The best subset found by the restart loop, before reinclusion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub solution: PtsSolution,
    /// Iteration that produced the best subset; 0 is the local search from all rows.
    pub best_iteration: usize,
    pub status: SearchStatus,
    /// Iterations that produced a full-rank subset.
    pub feasible_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FastPtsResult {
    pub penalties: PenaltyVector,
    pub robust: RobustInit,
    pub search: SearchResult,
    /// After reinclusion; this is the estimate.
    pub solution: PtsSolution,
}

/// Fast-PTS with robust penalties and reinclusion.
pub fn fast_pts(data: &Dataset, cfg: &PtsConfig) -> Result<PtsSolution> {
    fast_pts_detailed(data, cfg).map(|r| r.solution)
}

pub fn fast_pts_detailed(data: &Dataset, cfg: &PtsConfig) -> Result<FastPtsResult> {
    let (penalties, robust) = compute_penalties_detailed(data, cfg)?;
    let search = fast_pts_search(data, &penalties, cfg)?;
    let solution = reinclude(data, &search.solution, &penalties, cfg)?;
    Ok(FastPtsResult {
        penalties,
        robust,
        search,
        solution,
    })
}

fn iteration(data: &Dataset, pen: &PenaltyVector, cfg: &PtsConfig, it: usize) -> Option<LocalSearchOutcome> {
    let start = if it == 0 {
        SubsetIndex::full(data.n())
    } else {
        let mut rng = substream(cfg.seed, Domain::PtsIteration, it as u64);
        construct(data, pen, cfg, &mut rng).ok()?
    };
    local_search_detailed(data, pen, &start).ok()
}

/// Restart loop under fixed penalties. Iteration 0 is a local search from all
/// rows; iterations `1..=max_iter` are construction followed by local search,
/// each on its own random substream.
pub fn fast_pts_search(data: &Dataset, pen: &PenaltyVector, cfg: &PtsConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if pen.len() != data.n() {
        return Err(PtsError::InvalidDimensions(format!(
            "{} penalties for {} rows",
            pen.len(),
            data.n()
        )));
    }
    let outcomes: Vec<Option<LocalSearchOutcome>> = (0..=cfg.max_iter)
        .into_par_iter()
        .map(|it| iteration(data, pen, cfg, it))
        .collect();

    let mut best: Option<(usize, &LocalSearchOutcome)> = None;
    let mut trace = Vec::with_capacity(outcomes.len());
    for (it, out) in outcomes.iter().enumerate() {
        if let Some(o) = out {
            if best.is_none_or(|(_, b)| o.objective < b.objective) {
                best = Some((it, o));
            }
        }
        trace.push(best.map_or(f64::INFINITY, |(_, b)| b.objective));
    }
    let (best_iteration, out) = best.ok_or(PtsError::AllInfeasible)?;
    let mut solution = PtsSolution::from_fit(out.fit.clone(), pen);
    solution.objective_trace = trace;
    Ok(SearchResult {
        solution,
        best_iteration,
        status: out.status,
        feasible_iterations: outcomes.iter().filter(|o| o.is_some()).count(),
    })
}
