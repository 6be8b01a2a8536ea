use serde::Serialize;

use crate::data::Dataset;
use crate::error::Result;
use crate::pts::PtsConfig;
use crate::robust::{
    default_coverage, lts_fit, mcd_fit, robust_scale_or_fallback, LtsResult, McdResult,
    RobustScale,
};

/// Per-observation deletion costs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PenaltyVector {
    pub p: Vec<f64>,
    pub sigma_hat: f64,
    pub h_star: Vec<f64>,
}

/// `max(ε, (c √(1 − h*) σ̂)²)`.
pub fn penalty(cutoff: f64, h_star: f64, sigma_hat: f64, eps: f64) -> f64 {
    let s = cutoff * (1.0 - h_star).max(0.0).sqrt() * sigma_hat;
    (s * s).max(eps)
}

impl PenaltyVector {
    pub fn from_parts(sigma_hat: f64, h_star: Vec<f64>, cutoff: f64, eps: f64) -> Self {
        let p = h_star
            .iter()
            .map(|&h| penalty(cutoff, h, sigma_hat, eps))
            .collect();
        Self {
            p,
            sigma_hat,
            h_star,
        }
    }

    /// Equal penalties `max(ε, (c σ̂)²)`, i.e. every `h*` taken as zero.
    pub fn uniform(n: usize, sigma_hat: f64, cutoff: f64, eps: f64) -> Self {
        Self::from_parts(sigma_hat, vec![0.0; n], cutoff, eps)
    }

    /// Penalties given directly.
    pub fn from_values(p: Vec<f64>) -> Self {
        let n = p.len();
        Self {
            p,
            sigma_hat: f64::NAN,
            h_star: vec![f64::NAN; n],
        }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Everything the robust initialisation produced on the way to the penalties.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustInit {
    pub lts: LtsResult,
    pub scale: RobustScale,
    pub mcd: McdResult,
}

/// LTS scale and MCD leverages combined into penalties.
pub fn compute_penalties(data: &Dataset, cfg: &PtsConfig) -> Result<PenaltyVector> {
    compute_penalties_detailed(data, cfg).map(|(pen, _)| pen)
}

pub fn compute_penalties_detailed(
    data: &Dataset,
    cfg: &PtsConfig,
) -> Result<(PenaltyVector, RobustInit)> {
    cfg.validate()?;
    let k = default_coverage(data.n(), data.p());
    let lts = lts_fit(data, k, cfg.lts_starts, cfg.seed)?;
    let scale = robust_scale_or_fallback(data, &lts);
    let mcd = mcd_fit(data, k, cfg.mcd_starts, cfg.seed)?;
    let pen = PenaltyVector::from_parts(
        scale.sigma_hat,
        mcd.robust_leverages.clone(),
        cfg.cutoff_c,
        cfg.epsilon_floor,
    );
    Ok((pen, RobustInit { lts, scale, mcd }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_substitution() {
        assert_eq!(penalty(2.0, 0.0, 1.0, 1e-12), 4.0);
        assert!((penalty(2.0, 0.75, 1.0, 1e-12) - 1.0).abs() < 1e-15);
        assert_eq!(penalty(2.0, 0.3, 0.0, 1e-12), 1e-12);
    }

    #[test]
    fn uniform_penalties() {
        let p = PenaltyVector::uniform(3, 0.5, 3.0, 1e-12);
        assert_eq!(p.p, vec![2.25; 3]);
        assert_eq!(p.total(), 6.75);
    }
}
