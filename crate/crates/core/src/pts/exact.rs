use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::{ols_fit, SubsetIndex};
use crate::pts::objective::objective_from_fit;
use crate::pts::{PenaltyVector, PtsSolution};

/// Default cap on the number of enumerated subsets (`n ≤ 22`).
pub const EXACT_PTS_BUDGET: u128 = 1 << 22;

/// Global minimiser of `L(T)` by enumerating every subset. Subsets smaller
/// than `p` or without a full-rank fit are skipped. Ties go to the lowest mask.
pub fn exact_pts(data: &Dataset, pen: &PenaltyVector, budget: u128) -> Result<PtsSolution> {
    let (n, p) = (data.n(), data.p());
    if pen.len() != n {
        return Err(PtsError::InvalidDimensions(format!("{} penalties for {n} rows", pen.len())));
    }
    let needed = if n >= 127 { u128::MAX } else { 1u128 << n };
    if needed > budget {
        return Err(PtsError::BudgetExceeded { needed, budget });
    }
    let mut best: Option<(f64, u64)> = None;
    let mut rows = Vec::with_capacity(n);
    for mask in 0u64..(1u64 << n) {
        if (mask.count_ones() as usize) < p {
            continue;
        }
        rows.clear();
        rows.extend((0..n).filter(|&i| mask >> i & 1 == 1));
        let t = SubsetIndex::from_sorted_unchecked(rows.clone());
        let Ok(fit) = ols_fit(data, &t) else { continue };
        let l = objective_from_fit(&fit, pen);
        if best.is_none_or(|(b, _)| l < b) {
            best = Some((l, mask));
        }
    }
    let (_, mask) = best.ok_or(PtsError::AllInfeasible)?;
    let t = SubsetIndex::from_sorted_unchecked((0..n).filter(|&i| mask >> i & 1 == 1).collect());
    Ok(PtsSolution::from_fit(ols_fit(data, &t)?, pen))
}
