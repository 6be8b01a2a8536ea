//! Dense least-squares kernel: subset OLS, leverages, adjusted residuals.

mod chol;
mod matrix;
mod ols;
mod qr;
mod subset;

pub use chol::Cholesky;
pub use matrix::{dot, Matrix};
pub use ols::{
    adjusted_residuals, leverage, leverages, ols_fit, ols_fit_with_leverages, subset_factor,
    RegressionFit,
};
pub use qr::{GramFactor, RANK_TOL};
pub use subset::SubsetIndex;
