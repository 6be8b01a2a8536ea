//! Householder QR with column pivoting, and the triangular Gram factor it
//! leaves behind.
//!
//! For a subset design `X_S` with column permutation `P`, `X_S P = Q R`, hence
//! `X_Sᵀ X_S = P Rᵀ R Pᵀ`. [`GramFactor`] keeps `R` and `P`, which is all that
//! is needed for coefficient solves, leverages and rank-one row additions.

use crate::error::{PtsError, Result};

/// Relative pivot tolerance for rank decisions.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub(crate) struct PivotedQr {
    m: usize,
    p: usize,
    /// Column-major `m x p`; R on and above the diagonal, reflectors below.
    a: Vec<f64>,
    tau: Vec<f64>,
    perm: Vec<usize>,
    rank: usize,
}

impl PivotedQr {
    /// Factors the `m x p` matrix whose rows are yielded by `rows`.
    pub(crate) fn factor<'a>(rows: impl Iterator<Item = &'a [f64]>, p: usize) -> Self {
        let rows: Vec<&[f64]> = rows.collect();
        let m = rows.len();
        let mut a = vec![0.0; m * p];
        for (i, r) in rows.iter().enumerate() {
            for j in 0..p {
                a[j * m + i] = r[j];
            }
        }
        let kmax = m.min(p);
        let mut tau = vec![0.0; kmax];
        let mut perm: Vec<usize> = (0..p).collect();

        for k in 0..kmax {
            // Pivot: largest remaining column norm, lowest index on ties.
            let mut best = k;
            let mut best_norm = -1.0;
            for j in k..p {
                let col = &a[j * m + k..(j + 1) * m];
                let s: f64 = col.iter().map(|v| v * v).sum();
                if s > best_norm {
                    best_norm = s;
                    best = j;
                }
            }
            if best != k {
                for i in 0..m {
                    a.swap(k * m + i, best * m + i);
                }
                perm.swap(k, best);
            }

            let norm = best_norm.max(0.0).sqrt();
            if norm == 0.0 {
                tau[k] = 0.0;
                continue;
            }
            let alpha = a[k * m + k];
            let beta = if alpha >= 0.0 { -norm } else { norm };
            let v0 = alpha - beta;
            for i in k + 1..m {
                a[k * m + i] /= v0;
            }
            tau[k] = (beta - alpha) / beta;
            a[k * m + k] = beta;

            for j in k + 1..p {
                let mut w = a[j * m + k];
                for i in k + 1..m {
                    w += a[k * m + i] * a[j * m + i];
                }
                w *= tau[k];
                a[j * m + k] -= w;
                for i in k + 1..m {
                    a[j * m + i] -= w * a[k * m + i];
                }
            }
        }

        let lead = if kmax > 0 { a[0].abs() } else { 0.0 };
        let rank = if lead == 0.0 {
            0
        } else {
            (0..kmax)
                .take_while(|&k| a[k * m + k].abs() >= RANK_TOL * lead)
                .count()
        };

        Self {
            m,
            p,
            a,
            tau,
            perm,
            rank,
        }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Overwrites `b` (length `m`) with `Qᵀ b`.
    pub(crate) fn apply_qt(&self, b: &mut [f64]) {
        let m = self.m;
        for k in 0..self.tau.len() {
            let t = self.tau[k];
            if t == 0.0 {
                continue;
            }
            let mut w = b[k];
            for i in k + 1..m {
                w += self.a[k * m + i] * b[i];
            }
            w *= t;
            b[k] -= w;
            for i in k + 1..m {
                b[i] -= w * self.a[k * m + i];
            }
        }
    }

    /// The `R` factor and permutation, if the factorization has full column rank.
    pub(crate) fn gram_factor(&self) -> Result<GramFactor> {
        if self.rank < self.p {
            return Err(PtsError::RankDeficient {
                rank: self.rank,
                cols: self.p,
            });
        }
        let p = self.p;
        let mut r = vec![0.0; p * p];
        for k in 0..p {
            for j in k..p {
                r[k * p + j] = self.a[j * self.m + k];
            }
        }
        Ok(GramFactor {
            p,
            r,
            perm: self.perm.clone(),
        })
    }
}

/// Upper-triangular factor of a Gram matrix in pivoted coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GramFactor {
    p: usize,
    /// Row-major `p x p` upper triangle.
    r: Vec<f64>,
    perm: Vec<usize>,
}

impl GramFactor {
    pub fn dim(&self) -> usize {
        self.p
    }

    /// Solves `Rᵀ z = Pᵀ x`; then `xᵀ (XᵀX)⁻¹ x = ‖z‖²`.
    pub fn whiten_into(&self, x: &[f64], z: &mut [f64]) {
        let p = self.p;
        for j in 0..p {
            let mut s = x[self.perm[j]];
            for i in 0..j {
                s -= self.r[i * p + j] * z[i];
            }
            z[j] = s / self.r[j * p + j];
        }
    }

    /// Row-major `p x p` matrix `M` with `M x` equal to [`GramFactor::whiten`] of `x`.
    pub fn whitening_matrix(&self) -> Vec<f64> {
        let p = self.p;
        let mut m = vec![0.0; p * p];
        let mut e = vec![0.0; p];
        let mut z = vec![0.0; p];
        for k in 0..p {
            e[k] = 1.0;
            self.whiten_into(&e, &mut z);
            for j in 0..p {
                m[j * p + k] = z[j];
            }
            e[k] = 0.0;
        }
        m
    }

    pub fn whiten(&self, x: &[f64]) -> Vec<f64> {
        let mut z = vec![0.0; self.p];
        self.whiten_into(x, &mut z);
        z
    }

    /// Quadratic form `xᵀ (XᵀX)⁻¹ x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.whiten(x).iter().map(|v| v * v).sum()
    }

    /// Solves `(XᵀX) b = rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let p = self.p;
        let mut z = self.whiten(rhs);
        for k in (0..p).rev() {
            let mut s = z[k];
            for j in k + 1..p {
                s -= self.r[k * p + j] * z[j];
            }
            z[k] = s / self.r[k * p + k];
        }
        let mut out = vec![0.0; p];
        for (k, &pk) in self.perm.iter().enumerate() {
            out[pk] = z[k];
        }
        out
    }

    /// Back-solves `R b = qtb` and undoes the column permutation.
    pub(crate) fn back_solve_permuted(&self, qtb: &[f64]) -> Vec<f64> {
        let p = self.p;
        let mut z = qtb[..p].to_vec();
        for k in (0..p).rev() {
            let mut s = z[k];
            for j in k + 1..p {
                s -= self.r[k * p + j] * z[j];
            }
            z[k] = s / self.r[k * p + k];
        }
        let mut out = vec![0.0; p];
        for (k, &pk) in self.perm.iter().enumerate() {
            out[pk] = z[k];
        }
        out
    }

    /// Updates the factor for the Gram matrix `XᵀX + x xᵀ` (one added row).
    pub fn add_row(&mut self, x: &[f64]) {
        let p = self.p;
        let mut v: Vec<f64> = self.perm.iter().map(|&j| x[j]).collect();
        for k in 0..p {
            let rkk = self.r[k * p + k];
            let rad = rkk.hypot(v[k]);
            let c = rad / rkk;
            let s = v[k] / rkk;
            self.r[k * p + k] = rad;
            for j in k + 1..p {
                let rkj = (self.r[k * p + j] + s * v[j]) / c;
                v[j] = c * v[j] - s * rkj;
                self.r[k * p + j] = rkj;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor(rows: &[Vec<f64>]) -> PivotedQr {
        let p = rows[0].len();
        PivotedQr::factor(rows.iter().map(|r| r.as_slice()), p)
    }

    #[test]
    fn detects_collinear_columns() {
        let rows: Vec<Vec<f64>> = (0..6)
            .map(|i| vec![1.0, i as f64, 2.0 * i as f64 + 1.0])
            .collect();
        let qr = factor(&rows);
        assert_eq!(qr.rank(), 2);
        assert!(matches!(
            qr.gram_factor(),
            Err(PtsError::RankDeficient { rank: 2, cols: 3 })
        ));
    }

    #[test]
    fn gram_solve_matches_direct_2x2() {
        let rows = vec![vec![1.0, 2.0], vec![1.0, -1.0], vec![1.0, 0.5]];
        let g = factor(&rows).gram_factor().unwrap();
        // XᵀX = [[3, 1.5], [1.5, 5.25]]
        let b = g.solve(&[1.0, 0.0]);
        let det = 3.0 * 5.25 - 1.5 * 1.5;
        assert!((b[0] - 5.25 / det).abs() < 1e-14);
        assert!((b[1] + 1.5 / det).abs() < 1e-14);
    }

    #[test]
    fn add_row_matches_refactorization() {
        let mut rows = vec![
            vec![1.0, 0.3, -2.0],
            vec![1.0, 1.7, 0.4],
            vec![1.0, -0.9, 1.1],
            vec![1.0, 2.2, 3.0],
        ];
        let mut g = factor(&rows).gram_factor().unwrap();
        let extra = vec![1.0, 5.0, -4.0];
        g.add_row(&extra);
        rows.push(extra);
        let direct = factor(&rows).gram_factor().unwrap();
        for x in [[1.0, 0.0, 0.0], [0.2, -1.0, 3.0], [1.0, 1.0, 1.0]] {
            let a = g.quad_form(&x);
            let b = direct.quad_form(&x);
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{a} vs {b}");
        }
    }
}
