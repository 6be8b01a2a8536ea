use serde::{Deserialize, Serialize};

use crate::error::{PtsError, Result};

/// Tuning knobs for the penalties, the search and reinclusion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtsConfig {
    /// Cut-off `c`; deletion threshold on adjusted residuals is `c σ̂`.
    pub cutoff_c: f64,
    /// Construction greediness: 0 is purely greedy, 1 uniformly random.
    pub alpha_greed: f64,
    /// Construction + local search iterations.
    pub max_iter: usize,
    pub seed: u64,
    /// Lower bound on every penalty.
    pub epsilon_floor: f64,
    /// Reinclusion threshold on the studentized predicted residual.
    pub t_reinclude: f64,
    pub lts_starts: usize,
    pub mcd_starts: usize,
}

impl Default for PtsConfig {
    fn default() -> Self {
        Self {
            cutoff_c: 2.0,
            alpha_greed: 0.5,
            max_iter: 100,
            seed: 0,
            epsilon_floor: 1e-12,
            t_reinclude: 2.0,
            lts_starts: 500,
            mcd_starts: 500,
        }
    }
}

impl PtsConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(PtsError::InvalidConfig(msg.to_string()));
        if !(self.cutoff_c > 0.0 && self.cutoff_c.is_finite()) {
            return bad("cutoff must be positive");
        }
        if !(0.0..=1.0).contains(&self.alpha_greed) {
            return bad("alpha must lie in [0, 1]");
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1");
        }
        if !(self.epsilon_floor > 0.0) {
            return bad("epsilon must be positive");
        }
        if !(self.t_reinclude >= 0.0) {
            return bad("reinclusion threshold must be non-negative");
        }
        if self.lts_starts == 0 || self.mcd_starts == 0 {
            return bad("start counts must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_bad_values_rejected() {
        assert!(PtsConfig::default().validate().is_ok());
        for cfg in [
            PtsConfig { cutoff_c: 0.0, ..Default::default() },
            PtsConfig { alpha_greed: 1.5, ..Default::default() },
            PtsConfig { max_iter: 0, ..Default::default() },
            PtsConfig { epsilon_floor: 0.0, ..Default::default() },
        ] {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
