use serde::Serialize;

use crate::data::Dataset;
use crate::error::Result;
use crate::linalg::{ols_fit, RegressionFit, SubsetIndex};
use crate::pts::objective::objective_from_fit;
use crate::pts::PenaltyVector;

/// Safety cap on the number of relabelling passes.
pub const LOCAL_SEARCH_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Converged,
    /// Hit the cap; the best iterate is returned.
    Capped,
    /// The next iterate lost rank; the last full-rank iterate is returned.
    RankDeficientFixpoint,
}

#[derive(Debug, Clone)]
pub struct LocalSearchOutcome {
    pub fit: RegressionFit,
    pub objective: f64,
    pub status: SearchStatus,
    pub steps: usize,
    /// `L` of each iterate, starting with `T0`.
    pub trace: Vec<f64>,
}

/// Iterates `T ← {i : r(β_T)_i² < p_i}` to a fixed point.
pub fn local_search(data: &Dataset, pen: &PenaltyVector, t0: &SubsetIndex) -> Result<SubsetIndex> {
    local_search_detailed(data, pen, t0).map(|o| o.fit.subset)
}

pub fn local_search_detailed(
    data: &Dataset,
    pen: &PenaltyVector,
    t0: &SubsetIndex,
) -> Result<LocalSearchOutcome> {
    let fit = ols_fit(data, t0)?;
    local_search_from_fit(data, pen, fit)
}

pub(crate) fn local_search_from_fit(
    data: &Dataset,
    pen: &PenaltyVector,
    fit: RegressionFit,
) -> Result<LocalSearchOutcome> {
    let mut current = fit;
    let mut current_obj = objective_from_fit(&current, pen);
    let mut trace = vec![current_obj];
    let mut best: Option<(RegressionFit, f64)> = None;
    let mut status = SearchStatus::Capped;
    let mut steps = 0;
    while steps < LOCAL_SEARCH_CAP {
        steps += 1;
        let next: Vec<usize> = (0..data.n())
            .filter(|&i| current.residuals[i] * current.residuals[i] < pen.p[i])
            .collect();
        if next.as_slice() == current.subset.as_slice() {
            status = SearchStatus::Converged;
            break;
        }
        let next = SubsetIndex::from_sorted_unchecked(next);
        let Ok(fit) = ols_fit(data, &next) else {
            status = SearchStatus::RankDeficientFixpoint;
            break;
        };
        let obj = objective_from_fit(&fit, pen);
        trace.push(obj);
        let prev = std::mem::replace(&mut current, fit);
        let prev_obj = std::mem::replace(&mut current_obj, obj);
        if best.as_ref().is_none_or(|(_, b)| prev_obj < *b) {
            best = Some((prev, prev_obj));
        }
    }
    let (fit, objective) = match best {
        Some((b, bo)) if bo < current_obj => (b, bo),
        _ => (current, current_obj),
    };
    Ok(LocalSearchOutcome {
        fit,
        objective,
        status,
        steps,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::pts::objective::check_optimality;

    fn line_with_outlier() -> Dataset {
        let x = Matrix::from_fn(10, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let noise = [0.1, -0.2, 0.05, 0.15, -0.1, 0.0, 0.2, -0.15, 0.1, -0.05];
        let mut y: Vec<f64> = (0..10).map(|i| 1.0 + 2.0 * i as f64 + noise[i]).collect();
        y[6] += 3.0;
        Dataset::new(x, y).unwrap()
    }

    #[test]
    fn removes_the_outlier_from_the_full_set() {
        let d = line_with_outlier();
        let pen = PenaltyVector::uniform(10, 0.5, 2.0, 1e-12);
        let out = local_search_detailed(&d, &pen, &SubsetIndex::full(10)).unwrap();
        assert_eq!(out.status, SearchStatus::Converged);
        assert!(!out.fit.subset.contains(6));
        assert!(check_optimality(&d, &out.fit.subset, &pen, 1e-9).unwrap().holds());
        assert!(out.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn fixed_point_is_returned_after_one_pass() {
        let d = line_with_outlier();
        let pen = PenaltyVector::uniform(10, 0.5, 2.0, 1e-12);
        let fp = local_search(&d, &pen, &SubsetIndex::full(10)).unwrap();
        let out = local_search_detailed(&d, &pen, &fp).unwrap();
        assert_eq!(out.steps, 1);
        assert_eq!(out.fit.subset, fp);
    }

    #[test]
    fn generous_penalties_keep_everything() {
        let d = line_with_outlier();
        let pen = PenaltyVector::uniform(10, 100.0, 2.0, 1e-12);
        let t = local_search(&d, &pen, &SubsetIndex::new(vec![0, 1], 10).unwrap()).unwrap();
        assert_eq!(t, SubsetIndex::full(10));
    }

    #[test]
    fn collapse_to_rank_deficient_set_keeps_last_full_rank() {
        let d = line_with_outlier();
        let pen = PenaltyVector::uniform(10, 1e-3, 2.0, 1e-12);
        let out = local_search_detailed(&d, &pen, &SubsetIndex::full(10)).unwrap();
        assert_eq!(out.status, SearchStatus::RankDeficientFixpoint);
        assert_eq!(out.fit.subset, SubsetIndex::full(10));
    }
}
