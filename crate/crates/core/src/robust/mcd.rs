//! Approximate minimum covariance determinant on the non-constant columns of
//! the design, and the robust leverages derived from its clean subset.

use rand::seq::index::sample;
use rand::Rng as _;
use serde::Serialize;

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::{subset_factor, Cholesky, SubsetIndex};
use crate::rng::{Domain, Rng};
use crate::robust::cstep::{self, smallest_k, CStepState, Concentration, ConcentrationOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McdResult {
    pub subset: SubsetIndex,
    /// `h_i*` for every row.
    pub robust_leverages: Vec<f64>,
    /// Zero-variance columns left out of the location/scatter computations.
    pub dropped_constant_columns: Vec<usize>,
    /// Log-determinant of the subset scatter (normalised by the subset size).
    pub log_det: f64,
}

/// Location and scatter of a row subset over the active columns.
#[derive(Debug, Clone)]
struct Scatter {
    mean: Vec<f64>,
    chol: Cholesky,
}

#[derive(Debug, Clone)]
struct McdState {
    subset: SubsetIndex,
    scatter: Scatter,
}

impl CStepState for McdState {
    fn objective(&self) -> f64 {
        self.scatter.chol.log_det()
    }

    fn subset(&self) -> &SubsetIndex {
        &self.subset
    }
}

struct McdProblem<'a> {
    data: &'a Dataset,
    cols: Vec<usize>,
    k: usize,
}

impl McdProblem<'_> {
    fn point(&self, i: usize) -> Vec<f64> {
        let row = self.data.row(i);
        self.cols.iter().map(|&j| row[j]).collect()
    }

    fn scatter(&self, subset: &SubsetIndex) -> Option<Scatter> {
        let q = self.cols.len();
        let m = subset.len() as f64;
        let mut mean = vec![0.0; q];
        for i in subset {
            for (mu, v) in mean.iter_mut().zip(self.point(i)) {
                *mu += v;
            }
        }
        mean.iter_mut().for_each(|mu| *mu /= m);
        let mut cov = vec![0.0; q * q];
        for i in subset {
            let d: Vec<f64> = self.point(i).iter().zip(&mean).map(|(v, mu)| v - mu).collect();
            for a in 0..q {
                for b in 0..=a {
                    cov[a * q + b] += d[a] * d[b];
                }
            }
        }
        for a in 0..q {
            for b in 0..=a {
                cov[a * q + b] /= m;
                cov[b * q + a] = cov[a * q + b];
            }
        }
        Cholesky::new(&cov, q).map(|chol| Scatter { mean, chol })
    }

    fn distances(&self, s: &Scatter) -> Vec<f64> {
        (0..self.data.n())
            .map(|i| {
                let d: Vec<f64> = self.point(i).iter().zip(&s.mean).map(|(v, mu)| v - mu).collect();
                s.chol.quad_form(&d)
            })
            .collect()
    }

    fn concentrate_from(&self, s: &Scatter) -> Option<McdState> {
        let subset = smallest_k(&self.distances(s), self.k);
        let scatter = self.scatter(&subset)?;
        Some(McdState { subset, scatter })
    }
}

impl Concentration for McdProblem<'_> {
    type State = McdState;

    fn start(&self, rng: &mut Rng) -> Option<McdState> {
        let n = self.data.n();
        let m = (self.cols.len() + 1).min(n);
        let mut rows = sample(rng, n, m).into_vec();
        rows.sort_unstable();
        let mut subset = SubsetIndex::from_sorted_unchecked(rows);
        let scatter = loop {
            if let Some(s) = self.scatter(&subset) {
                break s;
            }
            if subset.len() == n {
                return None;
            }
            let rest = subset.complement(n);
            subset = subset.with(rest.as_slice()[rng.random_range(0..rest.len())]);
        };
        self.concentrate_from(&scatter)
    }

    fn step(&self, state: &McdState) -> Option<McdState> {
        self.concentrate_from(&state.scatter)
    }
}

/// Column indices whose values are all identical.
pub fn constant_columns(data: &Dataset) -> Vec<usize> {
    (0..data.p())
        .filter(|&j| {
            let first = data.row(0)[j];
            (1..data.n()).all(|i| data.row(i)[j] == first)
        })
        .collect()
}

fn problem<'a>(data: &'a Dataset, k: usize) -> Result<(McdProblem<'a>, Vec<usize>)> {
    let dropped = constant_columns(data);
    let cols: Vec<usize> = (0..data.p()).filter(|j| !dropped.contains(j)).collect();
    if k < cols.len() + 1 || k > data.n() {
        return Err(PtsError::InvalidConfig(format!(
            "MCD coverage {k} outside [{}, {}]",
            cols.len() + 1,
            data.n()
        )));
    }
    Ok((McdProblem { data, cols, k }, dropped))
}

/// Approximate MCD by random elemental starts refined with C-steps.
pub fn mcd_fit(data: &Dataset, coverage: usize, n_starts: usize, seed: u64) -> Result<McdResult> {
    mcd_fit_with(data, coverage, &ConcentrationOptions::with_starts(n_starts), seed)
}

pub fn mcd_fit_with(
    data: &Dataset,
    coverage: usize,
    opts: &ConcentrationOptions,
    seed: u64,
) -> Result<McdResult> {
    let (prob, dropped) = problem(data, coverage)?;
    let (subset, log_det) = if prob.cols.is_empty() {
        // Nothing to rank on: every row is equally central.
        (SubsetIndex::full(coverage), 0.0)
    } else {
        let (st, _) = cstep::two_stage(&prob, opts, seed, Domain::McdStart)
            .ok_or(PtsError::SingularScatter)?;
        let log_det = st.objective();
        (st.subset, log_det)
    };
    let robust_leverages = robust_leverages(data, &subset)?;
    Ok(McdResult {
        subset,
        robust_leverages,
        dropped_constant_columns: dropped,
        log_det,
    })
}

/// C-steps from a given subset, returning the log-determinant trace.
pub fn mcd_concentrate(
    data: &Dataset,
    start: &SubsetIndex,
    max_steps: usize,
) -> Result<(SubsetIndex, Vec<f64>)> {
    let (prob, _) = problem(data, start.len())?;
    let scatter = prob.scatter(start).ok_or(PtsError::SingularScatter)?;
    let state = McdState {
        subset: start.clone(),
        scatter,
    };
    let mut trace = Vec::new();
    let (st, _) = cstep::concentrate(&prob, state, max_steps, Some(&mut trace));
    Ok((st.subset, trace))
}

/// Log-determinant of the (1/m-normalised) scatter of `subset` over the
/// non-constant columns; `None` if singular.
pub fn scatter_log_det(data: &Dataset, subset: &SubsetIndex) -> Option<f64> {
    let (prob, _) = problem(data, subset.len().max(1)).ok()?;
    prob.scatter(subset).map(|s| s.chol.log_det())
}

/// Leverage of each row against the clean subset, with the row itself added
/// to the design when it lies outside the subset.
///
/// For `i ∉ S` with `h = x_iᵀ(X_SᵀX_S)⁻¹x_i`, adding row `i` gives `h / (1 + h)`.
pub fn robust_leverages(data: &Dataset, mcd_subset: &SubsetIndex) -> Result<Vec<f64>> {
    let g = subset_factor(data, mcd_subset)?;
    Ok((0..data.n())
        .map(|i| {
            let h = g.quad_form(data.row(i));
            if mcd_subset.contains(i) {
                h
            } else {
                h / (1.0 + h)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{leverages, Matrix};

    #[test]
    fn constant_design_leverages() {
        let x = Matrix::from_fn(10, 1, |_, _| 1.0);
        let d = Dataset::new(x, vec![0.0; 10]).unwrap();
        let s = SubsetIndex::new(vec![0, 1, 2, 3], 10).unwrap();
        let h = robust_leverages(&d, &s).unwrap();
        for i in 0..10 {
            let want = if i < 4 { 0.25 } else { 0.2 };
            assert!((h[i] - want).abs() < 1e-15);
        }
        let r = mcd_fit(&d, 6, 10, 0).unwrap();
        assert_eq!(r.dropped_constant_columns, vec![0]);
        assert_eq!(r.subset.len(), 6);
    }

    #[test]
    fn full_subset_matches_ordinary_leverage() {
        let x = Matrix::from_fn(7, 2, |i, j| if j == 0 { 1.0 } else { (i * i) as f64 });
        let d = Dataset::new(x, vec![0.0; 7]).unwrap();
        let all = SubsetIndex::full(7);
        let a = robust_leverages(&d, &all).unwrap();
        let b = leverages(&d, &all).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn coverage_must_exceed_dimension() {
        let x = Matrix::from_fn(6, 3, |i, j| (i + j * j) as f64 + (i * j) as f64);
        let d = Dataset::new(x, vec![0.0; 6]).unwrap();
        assert!(matches!(
            mcd_fit(&d, 3, 5, 0),
            Err(PtsError::InvalidConfig(_))
        ));
    }
}
