use serde::Serialize;

use crate::linalg::SubsetIndex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunEval {
    /// `‖β̂ − β‖²`.
    pub mse: f64,
    /// `β̂` is strictly closer to the outlier-cluster fit than to `β`.
    pub wrong: bool,
}

/// The coefficient vector that fits the outlier cluster: `slope` on the first
/// predictor, zero elsewhere.
pub fn contamination_vector(p: usize, slope: f64) -> Vec<f64> {
    let mut c = vec![0.0; p];
    if p > 1 {
        c[1] = slope;
    }
    c
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn eval_run(beta_hat: &[f64], beta_true: &[f64], slope: f64) -> RunEval {
    assert_eq!(beta_hat.len(), beta_true.len());
    let c = contamination_vector(beta_true.len(), slope);
    let mse = dist2(beta_hat, beta_true);
    RunEval {
        mse,
        wrong: dist2(beta_hat, &c) < mse,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSummary {
    pub replications: usize,
    pub pct_wrong: f64,
    pub mean_mse: f64,
}

pub fn summarize(runs: &[RunEval]) -> SimSummary {
    let r = runs.len().max(1) as f64;
    SimSummary {
        replications: runs.len(),
        pct_wrong: 100.0 * runs.iter().filter(|e| e.wrong).count() as f64 / r,
        mean_mse: runs.iter().map(|e| e.mse).sum::<f64>() / r,
    }
}

/// Mean and mean squared error of each coefficient across replications.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefStats {
    pub mean: Vec<f64>,
    pub mse: Vec<f64>,
}

pub fn coef_stats(betas: &[Vec<f64>], beta_true: &[f64]) -> CoefStats {
    let p = beta_true.len();
    let r = betas.len().max(1) as f64;
    let mut mean = vec![0.0; p];
    let mut mse = vec![0.0; p];
    for b in betas {
        for j in 0..p {
            mean[j] += b[j] / r;
            mse[j] += (b[j] - beta_true[j]).powi(2) / r;
        }
    }
    CoefStats { mean, mse }
}

/// Some row that should have been flagged is still in the clean set.
pub fn missed_any(clean: &SubsetIndex, bad: &SubsetIndex) -> bool {
    bad.iter().any(|i| clean.contains(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_truth_and_exact_contamination() {
        let e = eval_run(&[0.0, 0.0, 0.0], &[0.0; 3], 1.5);
        assert_eq!(e, RunEval { mse: 0.0, wrong: false });
        let e = eval_run(&[0.0, 1.5, 0.0], &[0.0; 3], 1.5);
        assert!(e.wrong);
        assert_eq!(e.mse, 2.25);
    }

    #[test]
    fn midpoint_is_not_wrong() {
        assert!(!eval_run(&[0.0, 1.0], &[0.0, 0.0], 2.0).wrong);
    }

    #[test]
    fn summary_and_coefficients() {
        let runs = [
            RunEval { mse: 1.0, wrong: true },
            RunEval { mse: 3.0, wrong: false },
        ];
        let s = summarize(&runs);
        assert_eq!((s.pct_wrong, s.mean_mse), (50.0, 2.0));
        let c = coef_stats(&[vec![1.0, 2.0], vec![3.0, 2.0]], &[1.0, 1.0]);
        assert_eq!(c.mean, vec![2.0, 2.0]);
        assert_eq!(c.mse, vec![2.0, 1.0]);
    }
}
