//! Shared two-stage concentration driver for LTS and MCD.
//!
//! Stage one runs a couple of C-steps from every random start; stage two
//! iterates the best few to a fixed point. Starts run in parallel; every
//! reduction orders by `(objective, start index)` so the outcome does not
//! depend on the thread count.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::linalg::SubsetIndex;
use crate::rng::{substream, Domain, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConcentrationOptions {
    pub n_starts: usize,
    pub stage_one_steps: usize,
    pub n_best: usize,
    pub max_steps: usize,
}

impl ConcentrationOptions {
    pub fn with_starts(n_starts: usize) -> Self {
        Self {
            n_starts,
            stage_one_steps: 2,
            n_best: 10,
            max_steps: 100,
        }
    }
}

impl Default for ConcentrationOptions {
    fn default() -> Self {
        Self::with_starts(500)
    }
}

pub(crate) trait CStepState: Clone + Send + Sync {
    fn objective(&self) -> f64;
    fn subset(&self) -> &SubsetIndex;
}

pub(crate) trait Concentration: Sync {
    type State: CStepState;

    /// Draws an elemental start and concentrates it once onto `k` rows.
    fn start(&self, rng: &mut Rng) -> Option<Self::State>;

    /// One C-step. `None` if the refit is degenerate.
    fn step(&self, state: &Self::State) -> Option<Self::State>;
}

/// Relative slack allowed when asserting monotone objectives.
const MONOTONE_SLACK: f64 = 1e-9;

pub(crate) fn is_monotone(prev: f64, next: f64) -> bool {
    next <= prev + MONOTONE_SLACK * prev.abs().max(1e-300) + 1e-12
}

/// Iterates C-steps until the subset repeats or `max_steps` is reached.
/// Returns the final state, whether it converged, and the objective trace.
pub(crate) fn concentrate<C: Concentration>(
    problem: &C,
    mut state: C::State,
    max_steps: usize,
    trace: Option<&mut Vec<f64>>,
) -> (C::State, bool) {
    let mut local = Vec::new();
    let trace = trace.unwrap_or(&mut local);
    trace.push(state.objective());
    for _ in 0..max_steps {
        let Some(next) = problem.step(&state) else {
            return (state, false);
        };
        debug_assert!(
            is_monotone(state.objective(), next.objective()),
            "C-step increased objective: {} -> {}",
            state.objective(),
            next.objective()
        );
        if next.subset() == state.subset() {
            return (state, true);
        }
        trace.push(next.objective());
        state = next;
    }
    (state, false)
}

fn order(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Runs the two-stage search. Returns the winning state and its start index.
pub(crate) fn two_stage<C: Concentration>(
    problem: &C,
    opts: &ConcentrationOptions,
    seed: u64,
    domain: Domain,
) -> Option<(C::State, usize)> {
    let stage_one: Vec<Option<(C::State, bool)>> = (0..opts.n_starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = substream(seed, domain, s as u64);
            let st = problem.start(&mut rng)?;
            Some(concentrate(problem, st, opts.stage_one_steps, None))
        })
        .collect();

    let mut ranked: Vec<(f64, usize)> = stage_one
        .iter()
        .enumerate()
        .filter_map(|(s, r)| r.as_ref().map(|(st, _)| (st.objective(), s)))
        .collect();
    ranked.sort_by(order);
    ranked.truncate(opts.n_best.max(1));

    let finals: Vec<(C::State, usize)> = ranked
        .par_iter()
        .map(|&(_, s)| {
            let (st, converged) = stage_one[s].clone().expect("ranked starts exist");
            if converged {
                (st, s)
            } else {
                (concentrate(problem, st, opts.max_steps, None).0, s)
            }
        })
        .collect();

    finals
        .into_iter()
        .min_by(|a, b| order(&(a.0.objective(), a.1), &(b.0.objective(), b.1)))
}

/// Indices of the `k` smallest `keys`, ties broken by index, returned sorted.
pub(crate) fn smallest_k(keys: &[f64], k: usize) -> SubsetIndex {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    if k < idx.len() {
        idx.select_nth_unstable_by(k, |&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
        idx.truncate(k);
    }
    idx.sort_unstable();
    SubsetIndex::from_sorted_unchecked(idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_k_breaks_ties_by_index() {
        let keys = [3.0, 1.0, 1.0, 0.5, 1.0, 9.0];
        assert_eq!(smallest_k(&keys, 3).as_slice(), &[1, 2, 3]);
        assert_eq!(smallest_k(&keys, 6).len(), 6);
        assert_eq!(smallest_k(&keys, 0).len(), 0);
    }
}
