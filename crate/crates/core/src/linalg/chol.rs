/// Lower Cholesky factor of a symmetric positive definite `q x q` matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    q: usize,
    l: Vec<f64>,
}

/// Pivots below this fraction of the largest diagonal entry count as singular.
const SINGULAR_TOL: f64 = 1e-12;

impl Cholesky {
    /// Factors row-major `a`; `None` when `a` is numerically singular.
    pub fn new(a: &[f64], q: usize) -> Option<Self> {
        debug_assert_eq!(a.len(), q * q);
        let scale = (0..q).map(|i| a[i * q + i]).fold(0.0_f64, f64::max);
        if !(scale > 0.0) {
            return None;
        }
        let mut l = vec![0.0; q * q];
        for j in 0..q {
            let mut d = a[j * q + j];
            for k in 0..j {
                d -= l[j * q + k] * l[j * q + k];
            }
            if !(d > SINGULAR_TOL * scale) {
                return None;
            }
            let d = d.sqrt();
            l[j * q + j] = d;
            for i in j + 1..q {
                let mut s = a[i * q + j];
                for k in 0..j {
                    s -= l[i * q + k] * l[j * q + k];
                }
                l[i * q + j] = s / d;
            }
        }
        Some(Self { q, l })
    }

    pub fn log_det(&self) -> f64 {
        (0..self.q).map(|i| 2.0 * self.l[i * self.q + i].ln()).sum()
    }

    /// `vᵀ A⁻¹ v`.
    pub fn quad_form(&self, v: &[f64]) -> f64 {
        let q = self.q;
        let mut z = vec![0.0; q];
        let mut acc = 0.0;
        for i in 0..q {
            let mut s = v[i];
            for k in 0..i {
                s -= self.l[i * q + k] * z[k];
            }
            z[i] = s / self.l[i * q + i];
            acc += z[i] * z[i];
        }
        acc
    }
}
