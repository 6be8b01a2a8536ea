use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::matrix::dot;
use crate::linalg::qr::{GramFactor, PivotedQr};
use crate::linalg::SubsetIndex;

/// Least-squares fit on a subset, with residuals for every observation.
#[derive(Debug, Clone)]
pub struct RegressionFit {
    pub beta: Vec<f64>,
    /// `y_i - x_iᵀ beta` for all `n` rows, inside and outside the subset.
    pub residuals: Vec<f64>,
    pub subset: SubsetIndex,
    /// Sum of squared residuals over the subset only.
    pub rss: f64,
    /// Leverages relative to the subset's Gram matrix, when requested.
    pub leverages: Option<Vec<f64>>,
    gram: GramFactor,
}

impl RegressionFit {
    pub fn gram(&self) -> &GramFactor {
        &self.gram
    }

    /// `xᵀ (X_SᵀX_S)⁻¹ x` for an arbitrary row vector.
    pub fn leverage_of(&self, x: &[f64]) -> f64 {
        self.gram.quad_form(x)
    }
}

/// Factors the subset design, failing when its rank is below `p`.
pub fn subset_factor(data: &Dataset, subset: &SubsetIndex) -> Result<GramFactor> {
    let p = data.p();
    if subset.len() < p {
        return Err(PtsError::RankDeficient {
            rank: subset.len(),
            cols: p,
        });
    }
    PivotedQr::factor(subset.iter().map(|i| data.row(i)), p).gram_factor()
}

/// Ordinary least squares on the rows in `subset`.
pub fn ols_fit(data: &Dataset, subset: &SubsetIndex) -> Result<RegressionFit> {
    let p = data.p();
    if subset.len() < p {
        return Err(PtsError::RankDeficient {
            rank: subset.len(),
            cols: p,
        });
    }
    let qr = PivotedQr::factor(subset.iter().map(|i| data.row(i)), p);
    let gram = qr.gram_factor()?;
    let mut qtb: Vec<f64> = subset.iter().map(|i| data.y()[i]).collect();
    qr.apply_qt(&mut qtb);
    let beta = gram.back_solve_permuted(&qtb);
    Ok(finish_fit(data, subset.clone(), beta, gram))
}

/// Builds a fit from known coefficients and factor.
fn finish_fit(
    data: &Dataset,
    subset: SubsetIndex,
    beta: Vec<f64>,
    gram: GramFactor,
) -> RegressionFit {
    let residuals: Vec<f64> = (0..data.n())
        .map(|i| data.y()[i] - dot(data.row(i), &beta))
        .collect();
    let rss = subset.iter().map(|i| residuals[i] * residuals[i]).sum();
    RegressionFit {
        beta,
        residuals,
        subset,
        rss,
        leverages: None,
        gram,
    }
}

/// OLS fit with leverages of all `n` rows filled in.
pub fn ols_fit_with_leverages(data: &Dataset, subset: &SubsetIndex) -> Result<RegressionFit> {
    let mut fit = ols_fit(data, subset)?;
    fit.leverages = Some(
        (0..data.n())
            .map(|i| fit.gram.quad_form(data.row(i)))
            .collect(),
    );
    Ok(fit)
}

/// `h_i = x_iᵀ (X_SᵀX_S)⁻¹ x_i`. Not capped at one for rows outside `subset`.
pub fn leverage(data: &Dataset, subset: &SubsetIndex, i: usize) -> Result<f64> {
    Ok(subset_factor(data, subset)?.quad_form(data.row(i)))
}

/// Leverages of all rows relative to `subset`.
pub fn leverages(data: &Dataset, subset: &SubsetIndex) -> Result<Vec<f64>> {
    let g = subset_factor(data, subset)?;
    Ok((0..data.n()).map(|i| g.quad_form(data.row(i))).collect())
}

/// `r_i / sqrt(1 - h_i)`; `None` where `h_i >= 1`.
pub fn adjusted_residuals(fit: &RegressionFit, leverages: &[f64]) -> Vec<Option<f64>> {
    fit.residuals
        .iter()
        .zip(leverages)
        .map(|(&r, &h)| (h < 1.0).then(|| r / (1.0 - h).sqrt()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn line_data() -> Dataset {
        let x = Matrix::from_fn(5, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let y = (0..5).map(|i| 2.0 + 0.5 * i as f64).collect();
        Dataset::new(x, y).unwrap()
    }

    #[test]
    fn noiseless_recovery() {
        let d = line_data();
        let fit = ols_fit(&d, &SubsetIndex::full(5)).unwrap();
        assert!((fit.beta[0] - 2.0).abs() < 1e-9);
        assert!((fit.beta[1] - 0.5).abs() < 1e-9);
        assert!(fit.rss < 1e-20);
    }

    #[test]
    fn too_small_subset_is_rank_deficient() {
        let d = line_data();
        let s = SubsetIndex::new(vec![3], 5).unwrap();
        assert!(matches!(
            ols_fit(&d, &s),
            Err(PtsError::RankDeficient { .. })
        ));
    }

    #[test]
    fn duplicate_rows_are_rank_deficient() {
        let x = Matrix::from_rows(&[[1.0, 2.0], [1.0, 2.0], [1.0, 3.0]]).unwrap();
        let d = Dataset::new(x, vec![0.0, 1.0, 2.0]).unwrap();
        let s = SubsetIndex::new(vec![0, 1], 3).unwrap();
        assert!(ols_fit(&d, &s).is_err());
    }

    #[test]
    fn constant_column_leverage_is_one_over_n() {
        let x = Matrix::from_fn(8, 1, |_, _| 1.0);
        let d = Dataset::new(x, (0..8).map(f64::from).collect()).unwrap();
        let h = leverages(&d, &SubsetIndex::full(8)).unwrap();
        assert!(h.iter().all(|&v| (v - 0.125).abs() < 1e-15));
    }

    #[test]
    fn saturated_fit_leverage_is_one() {
        let d = line_data();
        let s = SubsetIndex::new(vec![1, 4], 5).unwrap();
        for i in s.iter() {
            let h = leverage(&d, &s, i).unwrap();
            assert!(h <= 1.0 && 1.0 - h <= 1e-9, "h = {h}");
        }
        // Outside the subset the quadratic form is not capped.
        assert!(leverage(&d, &s, 0).unwrap() > 1.0);
    }

    #[test]
    fn adjusted_residual_cases() {
        let d = line_data();
        let mut fit = ols_fit(&d, &SubsetIndex::full(5)).unwrap();
        fit.residuals = vec![3.0, 0.0, 5.0, 1.0, 2.0];
        let a = adjusted_residuals(&fit, &[0.75, 0.4, 0.0, 1.0, 1.5]);
        assert_eq!(a[0], Some(6.0));
        assert_eq!(a[1], Some(0.0));
        assert_eq!(a[2], Some(5.0));
        assert_eq!(a[3], None);
        assert_eq!(a[4], None);
    }
}
