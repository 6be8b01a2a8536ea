//! Reweighted LTS residual scale.

use serde::Serialize;
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::dot;
use crate::robust::lts::{default_coverage, LtsResult};

/// Standardized residuals above this magnitude get weight zero.
pub const REWEIGHT_CUTOFF: f64 = 2.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustScale {
    /// Preliminary consistency-corrected trimmed scale.
    pub s_hat: f64,
    /// Final reweighted scale.
    pub sigma_hat: f64,
    pub weights: Vec<bool>,
    pub c_consistency: f64,
    /// `1 / Φ⁻¹((k + n) / 2n)`; zero when `k = n`.
    pub alpha_kn: f64,
    /// Set when the LTS coverage was not `⌊(n + p + 1) / 2⌋`.
    pub nonstandard_coverage: bool,
    /// Set when reweighting kept too few rows and `sigma_hat` fell back to `s_hat`.
    pub fell_back: bool,
}

/// `(α_{k,n}, c_{k,n})` making the trimmed scale consistent at the normal model.
///
/// Uses the normal density: `c = 1 / sqrt(1 - (2n / (k α)) φ(1/α))`. At `k = n`
/// the quantile is infinite and the limit `c = 1` is returned.
pub fn consistency_constants(k: usize, n: usize) -> (f64, f64) {
    assert!(k >= 1 && k <= n, "coverage {k} outside [1, {n}]");
    if k == n {
        return (0.0, 1.0);
    }
    let std = Normal::standard();
    let q = std.inverse_cdf((k + n) as f64 / (2 * n) as f64);
    let frac = 2.0 * n as f64 * q * std.pdf(q) / k as f64;
    (1.0 / q, 1.0 / (1.0 - frac).sqrt())
}

/// Computes `ŝ`, the 0/1 weights and `σ̂` from an LTS fit.
///
/// Fails with [`PtsError::DegenerateWeights`] when at most `p` rows keep weight one.
pub fn robust_scale(data: &Dataset, lts: &LtsResult) -> Result<RobustScale> {
    let scale = scale_parts(data, lts);
    if scale.fell_back {
        let kept = scale.weights.iter().filter(|&&w| w).count();
        return Err(PtsError::DegenerateWeights { kept, p: data.p() });
    }
    Ok(scale)
}

/// Like [`robust_scale`], but degenerate weights fall back to `σ̂ = ŝ`.
pub fn robust_scale_or_fallback(data: &Dataset, lts: &LtsResult) -> RobustScale {
    scale_parts(data, lts)
}

fn scale_parts(data: &Dataset, lts: &LtsResult) -> RobustScale {
    let n = data.n();
    let p = data.p();
    let k = lts.coverage;
    let residuals: Vec<f64> = (0..n)
        .map(|i| data.y()[i] - dot(data.row(i), &lts.beta))
        .collect();
    let mut sq: Vec<f64> = residuals.iter().map(|r| r * r).collect();
    sq.sort_by(f64::total_cmp);
    let trimmed_mean = sq[..k].iter().sum::<f64>() / k as f64;
    let (alpha_kn, c) = consistency_constants(k, n);
    let s_hat = c * trimmed_mean.sqrt();

    let weights: Vec<bool> = if s_hat > 0.0 {
        residuals
            .iter()
            .map(|r| (r / s_hat).abs() <= REWEIGHT_CUTOFF)
            .collect()
    } else {
        residuals.iter().map(|&r| r == 0.0).collect()
    };
    let kept = weights.iter().filter(|&&w| w).count();
    let (sigma_hat, fell_back) = if s_hat == 0.0 {
        (0.0, false)
    } else if kept <= p {
        (s_hat, true)
    } else {
        let num: f64 = residuals
            .iter()
            .zip(&weights)
            .filter(|(_, &w)| w)
            .map(|(r, _)| r * r)
            .sum();
        ((num / (kept - p) as f64).sqrt(), false)
    };

    RobustScale {
        s_hat,
        sigma_hat,
        weights,
        c_consistency: c,
        alpha_kn,
        nonstandard_coverage: k != default_coverage(n, p),
        fell_back,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, SubsetIndex};

    #[test]
    fn full_coverage_limit_is_one() {
        assert_eq!(consistency_constants(10, 10), (0.0, 1.0));
        let (_, c) = consistency_constants(99, 100);
        assert!(c > 1.0 && c < 1.05, "c = {c}");
    }

    #[test]
    fn half_coverage_constant() {
        // q = Φ⁻¹(0.75), c = 1 / sqrt(1 - 4 q φ(q)) for k = n/2.
        let (alpha, c) = consistency_constants(50, 100);
        let q = 0.674_489_750_196_081_7_f64;
        let phi = (-q * q / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert!((alpha - 1.0 / q).abs() < 1e-9);
        assert!((c - 1.0 / (1.0 - 4.0 * q * phi).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn exact_fit_gives_zero_scale() {
        let x = Matrix::from_fn(6, 1, |_, _| 1.0);
        let d = Dataset::new(x, vec![2.0; 6]).unwrap();
        let lts = LtsResult {
            beta: vec![2.0],
            subset: SubsetIndex::full(6),
            coverage: 4,
            objective: 0.0,
        };
        let s = robust_scale(&d, &lts).unwrap();
        assert_eq!(s.s_hat, 0.0);
        assert_eq!(s.sigma_hat, 0.0);
        assert!(s.weights.iter().all(|&w| w));
    }

    #[test]
    fn too_few_weights_is_degenerate() {
        // β = 0 so residuals equal y; only two rows survive the 2.5 cutoff.
        let x = Matrix::from_fn(7, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let d = Dataset::new(x, vec![0.0, 1.0, 30.0, 40.0, 50.0, 60.0, 70.0]).unwrap();
        let lts = LtsResult {
            beta: vec![0.0, 0.0],
            subset: SubsetIndex::new(vec![0, 1], 7).unwrap(),
            coverage: 2,
            objective: 1.0,
        };
        assert_eq!(
            robust_scale(&d, &lts),
            Err(PtsError::DegenerateWeights { kept: 2, p: 2 })
        );
        let fb = robust_scale_or_fallback(&d, &lts);
        assert!(fb.fell_back && fb.nonstandard_coverage);
        assert_eq!(fb.sigma_hat, fb.s_hat);
    }
}
