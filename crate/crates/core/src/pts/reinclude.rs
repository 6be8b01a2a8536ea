use crate::data::Dataset;
use crate::error::Result;
use crate::linalg::{ols_fit, subset_factor, SubsetIndex};
use crate::pts::{PenaltyVector, PtsConfig, PtsSolution};

/// `r_i / (σ̂ √(1 + h_i))` for a row outside the clean set. With `σ̂ = 0` the
/// statistic is 0 for an exact-fit row and infinite otherwise.
pub fn studentized_predicted_residual(residual: f64, h: f64, sigma_hat: f64, eps: f64) -> f64 {
    let scale = sigma_hat * (1.0 + h).sqrt();
    if scale > 0.0 {
        residual / scale
    } else if residual * residual <= eps {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Returns flagged rows with `|t_i| ≤ t_reinclude` to the clean set in one
/// batch and refits. Leverages are taken against the clean set before any row
/// is added back.
pub fn reinclude(
    data: &Dataset,
    sol: &PtsSolution,
    pen: &PenaltyVector,
    cfg: &PtsConfig,
) -> Result<PtsSolution> {
    if sol.outliers.is_empty() {
        return Ok(sol.clone());
    }
    let gram = subset_factor(data, &sol.clean)?;
    let back: Vec<usize> = sol
        .outliers
        .iter()
        .filter(|&i| {
            let h = gram.quad_form(data.row(i));
            let t = studentized_predicted_residual(
                sol.residuals[i],
                h,
                pen.sigma_hat,
                cfg.epsilon_floor,
            );
            t.abs() <= cfg.t_reinclude
        })
        .collect();
    if back.is_empty() {
        return Ok(sol.clone());
    }
    let reincluded = SubsetIndex::from_sorted_unchecked(back);
    let fit = ols_fit(data, &sol.clean.union(&reincluded))?;
    let mut out = PtsSolution::from_fit(fit, pen);
    out.objective_trace = sol.objective_trace.clone();
    out.reincluded = reincluded;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn statistic_cases() {
        assert_eq!(studentized_predicted_residual(3.0, 0.0, 1.5, 1e-12), 2.0);
        assert_eq!(studentized_predicted_residual(3.0, 3.0, 1.0, 1e-12), 1.5);
        assert_eq!(studentized_predicted_residual(0.0, 0.5, 0.0, 1e-12), 0.0);
        assert!(studentized_predicted_residual(0.1, 0.5, 0.0, 1e-12).is_infinite());
    }

    fn solution_on(data: &Dataset, clean: Vec<usize>, pen: &PenaltyVector) -> PtsSolution {
        let t = SubsetIndex::new(clean, data.n()).unwrap();
        PtsSolution::from_fit(ols_fit(data, &t).unwrap(), pen)
    }

    #[test]
    fn exact_fit_leverage_point_comes_back_outlier_stays_out() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0, 20.0, 2.5];
        let x = Matrix::from_fn(7, 2, |i, j| if j == 0 { 1.0 } else { xs[i] });
        let mut y: Vec<f64> = xs.iter().map(|v| 1.0 + v).collect();
        y[6] += 10.0;
        let d = Dataset::new(x, y).unwrap();
        let pen = PenaltyVector::uniform(7, 1.0, 2.0, 1e-12);
        let sol = solution_on(&d, vec![0, 1, 2, 3, 4], &pen);
        let out = reinclude(&d, &sol, &pen, &PtsConfig::default()).unwrap();
        assert_eq!(out.reincluded.as_slice(), &[5]);
        assert_eq!(out.outliers.as_slice(), &[6]);
        assert!((out.beta[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nothing_flagged_is_identity() {
        let x = Matrix::from_fn(4, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let d = Dataset::new(x, vec![0.0, 1.1, 1.9, 3.0]).unwrap();
        let pen = PenaltyVector::uniform(4, 1.0, 2.0, 1e-12);
        let sol = solution_on(&d, vec![0, 1, 2, 3], &pen);
        assert_eq!(reinclude(&d, &sol, &pen, &PtsConfig::default()).unwrap(), sol);
    }
}
