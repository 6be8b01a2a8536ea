//! Monte Carlo designs with clustered high-leverage outliers and with a mix
//! of bad leverage, good leverage and vertical outliers.
//!
//! Normal variates come from `rand_distr`'s ziggurat sampler on a ChaCha8
//! substream keyed by `(seed, rep)`.

use rand_distr::{Distribution, Normal, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::{Matrix, SubsetIndex};
use crate::rng::{substream, Domain};

/// Clustered-outlier design. `p` counts the intercept, so the design has
/// `p - 1` standard normal predictors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSpec {
    pub n: usize,
    pub p: usize,
    pub contamination: f64,
    pub slope: f64,
    /// First predictor of every contaminated row; the others are 0.
    pub outlier_x: f64,
    pub error_sigma: f64,
    pub replications: usize,
    pub seed: u64,
}

impl SimSpec {
    pub fn new(n: usize, p: usize, contamination: f64, slope: f64) -> Self {
        Self {
            n,
            p,
            contamination,
            slope,
            outlier_x: 100.0,
            error_sigma: 1.0,
            replications: 1,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(PtsError::InvalidConfig(m));
        if !(0.0..0.5).contains(&self.contamination) {
            return bad(format!("contamination {} outside [0, 0.5)", self.contamination));
        }
        if self.p < 2 {
            return bad("p must include the intercept and at least one predictor".into());
        }
        if self.n <= self.p {
            return bad(format!("n = {} must exceed p = {}", self.n, self.p));
        }
        if self.replications == 0 {
            return bad("at least one replication".into());
        }
        if !(self.error_sigma > 0.0) {
            return bad("error sigma must be positive".into());
        }
        Ok(())
    }

    /// `⌊εn⌋`.
    pub fn n_contaminated(&self) -> usize {
        (self.contamination * self.n as f64 + 1e-9).floor() as usize
    }
}

#[derive(Debug, Clone)]
pub struct SimSample {
    pub dataset: Dataset,
    pub beta_true: Vec<f64>,
    /// Rows that were altered in any way.
    pub contaminated: SubsetIndex,
    /// Altered rows that do not follow the model and should be flagged.
    pub bad: SubsetIndex,
}

/// Clean rows follow `y = ε`, `ε ~ N(0, σ²)`, with iid standard normal
/// predictors; the first `⌊εn⌋` rows are `x = (1, outlier_x, 0, …)` and
/// `y = slope · outlier_x`.
pub fn gen_barrera_yohai(spec: &SimSpec, rep: usize) -> Result<SimSample> {
    spec.validate()?;
    let mut rng = substream(spec.seed, Domain::Simulation, rep as u64);
    let (n, p) = (spec.n, spec.p);
    let m = spec.n_contaminated();
    let mut x = Matrix::zeros(n, p);
    let mut y = vec![0.0; n];
    for i in 0..n {
        x.set(i, 0, 1.0);
        if i < m {
            x.set(i, 1, spec.outlier_x);
            y[i] = spec.slope * spec.outlier_x;
        } else {
            for j in 1..p {
                x.set(i, j, StandardNormal.sample(&mut rng));
            }
            let e: f64 = StandardNormal.sample(&mut rng);
            y[i] = spec.error_sigma * e;
        }
    }
    let contaminated = SubsetIndex::from_sorted_unchecked((0..m).collect());
    Ok(SimSample {
        dataset: Dataset::new(x, y)?,
        beta_true: vec![0.0; p],
        bad: contaminated.clone(),
        contaminated,
    })
}

/// Contamination counts for the mixed design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedSpec {
    pub n: usize,
    /// Shifted predictor, response left as generated.
    pub bad_leverage: usize,
    /// Shifted predictor, response regenerated from the model.
    pub good_leverage: usize,
    /// Shifted response.
    pub y_outliers: usize,
}

impl MixedSpec {
    pub const fn with_good_leverage() -> Self {
        Self { n: 50, bad_leverage: 6, good_leverage: 4, y_outliers: 6 }
    }

    pub const fn bad_leverage_only() -> Self {
        Self { n: 50, bad_leverage: 10, good_leverage: 0, y_outliers: 6 }
    }

    pub const fn clean() -> Self {
        Self { n: 50, bad_leverage: 0, good_leverage: 0, y_outliers: 0 }
    }

    pub fn n_contaminated(&self) -> usize {
        self.bad_leverage + self.good_leverage + self.y_outliers
    }
}

pub const MIXED_BETA: [f64; 3] = [0.0, 1.2, -0.8];

/// `y = 1.2 x₁ − 0.8 x₂ + u` with `x₁ ~ N(20, 6²)`, `x₂ ~ N(30, 8²)`,
/// `u ~ N(0, 16²)`. Contaminated rows come first: bad leverage, good leverage,
/// then vertical outliers, each shifted by a `U(80, 220)` draw. Leverage
/// shifts go to `x₁` on odd-numbered contaminated rows and to `x₂` on even ones.
pub fn gen_mixed_contamination(spec: &MixedSpec, seed: u64, rep: usize) -> Result<SimSample> {
    if spec.n_contaminated() >= spec.n || spec.n < 4 {
        return Err(PtsError::InvalidConfig(format!(
            "{} contaminated rows out of {}",
            spec.n_contaminated(),
            spec.n
        )));
    }
    let mut rng = substream(seed, Domain::Simulation, rep as u64);
    let nx1 = Normal::new(20.0, 6.0).unwrap();
    let nx2 = Normal::new(30.0, 8.0).unwrap();
    let nu = Normal::new(0.0, 16.0).unwrap();
    let shift = Uniform::new(80.0, 220.0).unwrap();
    let model = |x1: f64, x2: f64| MIXED_BETA[0] + MIXED_BETA[1] * x1 + MIXED_BETA[2] * x2;

    let n = spec.n;
    let lev_end = spec.bad_leverage + spec.good_leverage;
    let m = spec.n_contaminated();
    let mut x = Matrix::zeros(n, 3);
    let mut y = vec![0.0; n];
    for i in 0..n {
        let (mut x1, mut x2, u): (f64, f64, f64) =
            (nx1.sample(&mut rng), nx2.sample(&mut rng), nu.sample(&mut rng));
        y[i] = model(x1, x2) + u;
        if i < lev_end {
            let s = shift.sample(&mut rng);
            // Row i is contaminated row i + 1 in 1-based numbering.
            if i % 2 == 0 {
                x1 += s;
            } else {
                x2 += s;
            }
            if i >= spec.bad_leverage {
                y[i] = model(x1, x2) + u;
            }
        } else if i < m {
            y[i] += shift.sample(&mut rng);
        }
        x.set(i, 0, 1.0);
        x.set(i, 1, x1);
        x.set(i, 2, x2);
    }
    let bad = (0..spec.bad_leverage).chain(lev_end..m).collect();
    Ok(SimSample {
        dataset: Dataset::new(x, y)?,
        beta_true: MIXED_BETA.to_vec(),
        contaminated: SubsetIndex::from_sorted_unchecked((0..m).collect()),
        bad: SubsetIndex::from_sorted_unchecked(bad),
    })
}
