use serde::Serialize;

use crate::linalg::{RegressionFit, SubsetIndex};
use crate::pts::objective::objective_from_fit;
use crate::pts::PenaltyVector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PtsSolution {
    pub clean: SubsetIndex,
    pub beta: Vec<f64>,
    /// `L(clean)` under the penalties the solution was computed with.
    pub objective: f64,
    pub outliers: SubsetIndex,
    pub k: usize,
    /// Best objective seen after each iteration.
    pub objective_trace: Vec<f64>,
    pub reincluded: SubsetIndex,
    /// Residuals of all rows under `beta`.
    pub residuals: Vec<f64>,
}

impl PtsSolution {
    pub(crate) fn from_fit(fit: RegressionFit, pen: &PenaltyVector) -> Self {
        let n = fit.residuals.len();
        Self {
            objective: objective_from_fit(&fit, pen),
            outliers: fit.subset.complement(n),
            k: fit.subset.len(),
            clean: fit.subset,
            beta: fit.beta,
            objective_trace: Vec::new(),
            reincluded: SubsetIndex::empty(),
            residuals: fit.residuals,
        }
    }

    pub fn n(&self) -> usize {
        self.residuals.len()
    }

    /// Fraction of rows flagged as outliers.
    pub fn flagged_fraction(&self) -> f64 {
        self.outliers.len() as f64 / self.n() as f64
    }
}
