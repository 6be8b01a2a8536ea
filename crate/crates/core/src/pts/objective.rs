use serde::Serialize;

use crate::data::Dataset;
use crate::linalg::{ols_fit, RegressionFit, SubsetIndex};
use crate::pts::PenaltyVector;

/// `L(T)` from a fit on `T`: in-subset RSS plus penalties of the rest.
pub fn objective_from_fit(fit: &RegressionFit, pen: &PenaltyVector) -> f64 {
    let mask = fit.subset.to_mask(pen.len());
    let deleted: f64 = pen
        .p
        .iter()
        .zip(&mask)
        .filter(|(_, &m)| !m)
        .map(|(p, _)| p)
        .sum();
    fit.rss + deleted
}

/// `L(T)`; `+∞` when `T` does not admit a full-rank fit.
pub fn objective(data: &Dataset, t: &SubsetIndex, pen: &PenaltyVector) -> f64 {
    match ols_fit(data, t) {
        Ok(fit) => objective_from_fit(&fit, pen),
        Err(_) => f64::INFINITY,
    }
}

/// Every in-subset squared residual strictly below its penalty.
pub fn is_penalty_free(data: &Dataset, t: &SubsetIndex, pen: &PenaltyVector) -> bool {
    match ols_fit(data, t) {
        Ok(fit) => fit_is_penalty_free(&fit, pen),
        Err(_) => false,
    }
}

pub(crate) fn fit_is_penalty_free(fit: &RegressionFit, pen: &PenaltyVector) -> bool {
    fit.subset
        .iter()
        .all(|i| fit.residuals[i] * fit.residuals[i] < pen.p[i])
}

/// Post hoc check of the two necessary optimality conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalityCheck {
    /// Kept rows with `r² > p` beyond tolerance.
    pub kept_violations: Vec<usize>,
    /// Deleted rows with `r² < p` beyond tolerance.
    pub deleted_violations: Vec<usize>,
}

impl OptimalityCheck {
    pub fn holds(&self) -> bool {
        self.kept_violations.is_empty() && self.deleted_violations.is_empty()
    }
}

/// Checks `r(β_T)² ≤ p` on `T` and `r(β_T)² ≥ p` off `T`, with relative
/// tolerance `tol`. `None` if `T` is rank deficient.
pub fn check_optimality(
    data: &Dataset,
    t: &SubsetIndex,
    pen: &PenaltyVector,
    tol: f64,
) -> Option<OptimalityCheck> {
    let fit = ols_fit(data, t).ok()?;
    let mut kept_violations = Vec::new();
    let mut deleted_violations = Vec::new();
    let mask = t.to_mask(data.n());
    for (i, &inside) in mask.iter().enumerate() {
        let r2 = fit.residuals[i] * fit.residuals[i];
        let slack = tol * r2.max(pen.p[i]);
        if inside && r2 > pen.p[i] + slack {
            kept_violations.push(i);
        } else if !inside && r2 < pen.p[i] - slack {
            deleted_violations.push(i);
        }
    }
    Some(OptimalityCheck {
        kept_violations,
        deleted_violations,
    })
}
