//! Greedy randomized construction of a maximal penalty-free subset.
//!
//! The subset grows one row at a time. Adding row `j` to `T` changes the fit
//! by a rank-one term: with `G = (X_TᵀX_T)⁻¹`, `h_j = x_jᵀ G x_j`, residual
//! `e_j` under `β_T` and `γ = e_j / (1 + h_j)`,
//!
//! ```text
//! r(β_{T∪j})_i = r_i − (x_iᵀ G x_j) γ,   r(β_{T∪j})_j = γ,
//! RSS(T ∪ j)   = RSS(T) + e_j² / (1 + h_j).
//! ```
//!
//! Candidates are screened with `|x_iᵀ G x_j| ≤ sqrt(h_i h_j)`: a kept row whose
//! slack `sqrt(p_i) − |r_i|` exceeds `sqrt(h_i h_j) |γ|` cannot be pushed over its
//! penalty, so only rows with small slack need the exact test.

use rand::seq::index::sample;
use rand::Rng as _;

use crate::data::Dataset;
use crate::error::{PtsError, Result};
use crate::linalg::{dot, ols_fit, GramFactor, RegressionFit, SubsetIndex};
use crate::pts::objective::fit_is_penalty_free;
use crate::pts::{PenaltyVector, PtsConfig};
use crate::rng::Rng;

/// Random draws of a penalty-free `(p + 1)`-subset before falling back to `p` rows.
pub const START_ATTEMPTS: usize = 100;

/// Outcome of one construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub subset: SubsetIndex,
    /// The `(p + 1)`-row start failed and a `p`-row exact fit was used instead.
    pub fell_back: bool,
}

/// Builds a maximal penalty-free subset.
pub fn construct(
    data: &Dataset,
    pen: &PenaltyVector,
    cfg: &PtsConfig,
    rng: &mut Rng,
) -> Result<SubsetIndex> {
    construct_detailed(data, pen, cfg, rng).map(|c| c.subset)
}

pub fn construct_detailed(
    data: &Dataset,
    pen: &PenaltyVector,
    cfg: &PtsConfig,
    rng: &mut Rng,
) -> Result<Construction> {
    let (start, fell_back) = random_start(data, pen, rng)?;
    let mut g = Growth::new(data, pen, start);
    while let Some(j) = g.choose(cfg.alpha_greed, rng) {
        g.add(j);
    }
    Ok(Construction {
        subset: SubsetIndex::from_mask(&g.member),
        fell_back,
    })
}

fn random_subset(n: usize, m: usize, rng: &mut Rng) -> SubsetIndex {
    let mut v = sample(rng, n, m).into_vec();
    v.sort_unstable();
    SubsetIndex::from_sorted_unchecked(v)
}

fn random_start(
    data: &Dataset,
    pen: &PenaltyVector,
    rng: &mut Rng,
) -> Result<(RegressionFit, bool)> {
    let (n, p) = (data.n(), data.p());
    if p < n {
        for _ in 0..START_ATTEMPTS {
            if let Ok(fit) = ols_fit(data, &random_subset(n, p + 1, rng)) {
                if fit_is_penalty_free(&fit, pen) {
                    return Ok((fit, false));
                }
            }
        }
    }
    for _ in 0..START_ATTEMPTS {
        if let Ok(fit) = ols_fit(data, &random_subset(n, p, rng)) {
            return Ok((fit, true));
        }
    }
    Err(PtsError::DegenerateData(
        "no full-rank p-subset found for a construction start".into(),
    ))
}

/// Incrementally maintained fit on the growing subset.
struct Growth<'a> {
    data: &'a Dataset,
    pen: &'a PenaltyVector,
    member: Vec<bool>,
    gram: GramFactor,
    xty: Vec<f64>,
    residuals: Vec<f64>,
    rss: f64,
    deleted_penalty: f64,
    root_pen: Vec<f64>,
    /// Leverages of all rows against the current subset.
    lev: Vec<f64>,
    /// Whitened rows `R⁻ᵀ Pᵀ x_i`, row-major `n x p`.
    z: Vec<f64>,
}

impl<'a> Growth<'a> {
    fn new(data: &'a Dataset, pen: &'a PenaltyVector, start: RegressionFit) -> Self {
        let (n, p) = (data.n(), data.p());
        let member = start.subset.to_mask(n);
        let mut xty = vec![0.0; p];
        for i in start.subset.iter() {
            for (acc, x) in xty.iter_mut().zip(data.row(i)) {
                *acc += x * data.y()[i];
            }
        }
        let deleted_penalty = (0..n).filter(|&i| !member[i]).map(|i| pen.p[i]).sum();
        Self {
            data,
            pen,
            member,
            gram: start.gram().clone(),
            xty,
            residuals: start.residuals,
            rss: start.rss,
            deleted_penalty,
            root_pen: pen.p.iter().map(|v| v.sqrt()).collect(),
            lev: vec![0.0; n],
            z: vec![0.0; n * p],
        }
    }

    /// Picks the next row to add, or `None` when no addition stays penalty-free.
    fn choose(&mut self, alpha: f64, rng: &mut Rng) -> Option<usize> {
        let mut candidates = self.candidates();
        if candidates.is_empty() {
            return None;
        }
        // Uniform draw among the best `max(1, ⌈α|C|⌉)` in (loss, index) order;
        // selecting the drawn rank is equivalent to sorting first.
        let top = ((alpha * candidates.len() as f64).ceil() as usize).clamp(1, candidates.len());
        let rank = rng.random_range(0..top);
        let (_, chosen, _) = candidates
            .select_nth_unstable_by(rank, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Some(chosen.1)
    }

    /// `(L(T ∪ j), j)` for every `j` in `C(T)`, in index order.
    fn candidates(&mut self) -> Vec<(f64, usize)> {
        let (n, p) = (self.data.n(), self.data.p());
        let m = self.gram.whitening_matrix();

        // One pass over all rows: whiten, then record candidates whose own
        // residual stays under its penalty, and the largest slack a kept row
        // would need to survive any of them.
        let mut trial: Vec<(usize, f64, f64)> = Vec::new();
        let mut widest = 0.0f64;
        for i in 0..n {
            let x = self.data.row(i);
            let z = &mut self.z[i * p..(i + 1) * p];
            let mut h = 0.0;
            for (zk, mk) in z.iter_mut().zip(m.chunks_exact(p)) {
                *zk = dot(mk, x);
                h += *zk * *zk;
            }
            self.lev[i] = h;
            if !self.member[i] {
                let gamma = self.residuals[i] / (1.0 + h);
                if gamma * gamma < self.pen.p[i] {
                    let bound = h.sqrt() * gamma.abs() * (1.0 + 1e-9);
                    widest = widest.max(bound);
                    trial.push((i, gamma, bound));
                }
            }
        }
        if trial.is_empty() {
            return Vec::new();
        }

        // Kept rows that some candidate could push over their penalty, ordered
        // by `slack / sqrt(h)`.
        let mut screen: Vec<(f64, usize)> = (0..n)
            .filter(|&i| self.member[i])
            .filter_map(|i| {
                let slack = self.root_pen[i] - self.residuals[i].abs();
                if slack <= 0.0 {
                    return Some((0.0, i));
                }
                let h = self.lev[i];
                (slack * slack <= widest * widest * h).then(|| (slack / h.sqrt(), i))
            })
            .collect();
        screen.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut candidates: Vec<(f64, usize)> = Vec::with_capacity(trial.len());
        for (j, gamma, bound) in trial {
            let zj = &self.z[j * p..(j + 1) * p];
            let ok = screen.iter().take_while(|(q, _)| *q <= bound).all(|&(_, i)| {
                let a = dot(&self.z[i * p..(i + 1) * p], zj);
                let r = self.residuals[i] - a * gamma;
                r * r < self.pen.p[i]
            });
            if ok {
                let loss =
                    self.rss + self.residuals[j] * gamma + self.deleted_penalty - self.pen.p[j];
                candidates.push((loss, j));
            }
        }
        candidates
    }

    fn add(&mut self, j: usize) {
        let data = self.data;
        let xj = data.row(j);
        self.gram.add_row(xj);
        for (acc, x) in self.xty.iter_mut().zip(xj) {
            *acc += x * data.y()[j];
        }
        self.member[j] = true;
        self.deleted_penalty -= self.pen.p[j];
        let beta = self.gram.solve(&self.xty);
        let mut rss = 0.0;
        for i in 0..data.n() {
            let r = data.y()[i] - dot(data.row(i), &beta);
            self.residuals[i] = r;
            if self.member[i] {
                rss += r * r;
            }
        }
        self.rss = rss;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::pts::objective::{is_penalty_free, objective};
    use crate::rng::{substream, Domain};
    use rand_distr::{Distribution, StandardNormal};

    fn noisy_line(n: usize, seed: u64) -> Dataset {
        let mut rng = substream(seed, Domain::Simulation, 0);
        let x = Matrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { i as f64 / 3.0 });
        let y = (0..n)
            .map(|i| 1.0 + 0.5 * x.get(i, 1) + 0.3 * {
                let z: f64 = StandardNormal.sample(&mut rng);
                z
            })
            .collect();
        Dataset::new(x, y).unwrap()
    }

    /// Candidate set by brute-force refits, for comparison with the screened path.
    fn brute_candidates(d: &Dataset, t: &SubsetIndex, pen: &PenaltyVector) -> Vec<(f64, usize)> {
        let mut c: Vec<(f64, usize)> = t
            .complement(d.n())
            .iter()
            .filter_map(|j| {
                let tj = t.with(j);
                is_penalty_free(d, &tj, pen).then(|| (objective(d, &tj, pen), j))
            })
            .collect();
        c.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        c
    }

    fn sorted(mut c: Vec<(f64, usize)>) -> Vec<(f64, usize)> {
        c.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        c
    }

    /// Noisy line with a gross outlier, a remote leverage pair and unequal penalties.
    fn mixed_instance(seed: u64) -> (Dataset, PenaltyVector) {
        let mut d = noisy_line(20, seed);
        let mut x = d.x().clone();
        let mut y = d.y().to_vec();
        y[3] += 5.0;
        for i in [11, 12] {
            x.set(i, 1, 30.0);
            y[i] = 20.0;
        }
        d = Dataset::new(x, y).unwrap();
        let p = (0..20).map(|i| 0.2 + 0.05 * ((i * 7) % 11) as f64).collect();
        (d, PenaltyVector::from_values(p))
    }

    #[test]
    fn candidate_sets_match_brute_force_refits() {
        for seed in 0..6 {
            let (d, pen) = mixed_instance(seed);
            for alpha in [0.0, 0.5, 1.0] {
                let mut rng = substream(seed, Domain::PtsIteration, 7);
                let (start, _) = random_start(&d, &pen, &mut rng).unwrap();
                let mut g = Growth::new(&d, &pen, start);
                loop {
                    let t = SubsetIndex::from_mask(&g.member);
                    let brute = brute_candidates(&d, &t, &pen);
                    let fast = sorted(g.candidates());
                    let ids = |c: &[(f64, usize)]| c.iter().map(|e| e.1).collect::<Vec<_>>();
                    assert_eq!(ids(&fast), ids(&brute), "seed {seed} alpha {alpha} T {t:?}");
                    for (f, b) in fast.iter().zip(&brute) {
                        assert!((f.0 - b.0).abs() <= 1e-9 * b.0.abs().max(1.0));
                    }
                    match g.choose(alpha, &mut rng) {
                        None => break,
                        Some(j) => {
                            if alpha == 0.0 {
                                assert_eq!(j, brute[0].1);
                            }
                            g.add(j);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn result_is_penalty_free_and_maximal() {
        let mut d = noisy_line(30, 5);
        let mut y = d.y().to_vec();
        y[4] += 8.0;
        y[17] -= 6.0;
        d = d.with_response(y).unwrap();
        let pen = PenaltyVector::uniform(30, 0.3, 2.0, 1e-12);
        for s in 0..10 {
            let mut rng = substream(s, Domain::PtsIteration, 1);
            let t = construct(&d, &pen, &PtsConfig::default(), &mut rng).unwrap();
            assert!(is_penalty_free(&d, &t, &pen));
            assert!(brute_candidates(&d, &t, &pen).is_empty());
            assert!(!t.contains(4) && !t.contains(17));
        }
    }

    #[test]
    fn noiseless_data_grows_to_everything() {
        let x = Matrix::from_fn(12, 3, |i, j| match j {
            0 => 1.0,
            1 => i as f64,
            _ => ((i * 7) % 5) as f64,
        });
        let y = (0..12).map(|i| 2.0 - x.get(i, 1) + 0.5 * x.get(i, 2)).collect();
        let d = Dataset::new(x, y).unwrap();
        let pen = PenaltyVector::uniform(12, 1.0, 2.0, 1e-12);
        let mut rng = substream(0, Domain::PtsIteration, 0);
        let t = construct(&d, &pen, &PtsConfig::default(), &mut rng).unwrap();
        assert_eq!(t, SubsetIndex::full(12));
    }
}
