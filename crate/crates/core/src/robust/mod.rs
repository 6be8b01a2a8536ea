//! Robust ingredients for the penalties: the LTS scale and MCD leverages.

mod cstep;
pub mod lts;
pub mod mcd;
pub mod scale;

pub use cstep::ConcentrationOptions;
pub use lts::{
    binomial, default_coverage, lts_concentrate, lts_exact, lts_fit, lts_fit_with, LtsResult,
    LTS_EXACT_BUDGET,
};
pub use mcd::{
    constant_columns, mcd_concentrate, mcd_fit, mcd_fit_with, robust_leverages, scatter_log_det,
    McdResult,
};
pub use scale::{
    consistency_constants, robust_scale, robust_scale_or_fallback, RobustScale, REWEIGHT_CUTOFF,
};
