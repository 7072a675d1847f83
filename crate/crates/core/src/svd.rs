//! One-sided Jacobi singular value decomposition, minimum-norm least
//! squares, and numeric rank.

use num_complex::Complex64;

use crate::defaults::HERMITICITY_TOL;
use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 40;
const PAIR_TOL: f64 = 1e-13;
// Columns below this fraction of ||A||_F are rounding debris from earlier
// rotations (rank-deficient inputs always produce some); pairing them is
// pointless and their garbage correlations would stall the sweep.
const ZERO_COL_TOL: f64 = 1e-13;

/// Rectangular complex matrix, column major (the SVD iteration works on
/// whole columns).
#[derive(Debug, Clone)]
pub(crate) struct RectMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl RectMatrix {
    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1);
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[j * self.rows + i] = z;
    }

    fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Rotate columns p and q in place by the plane rotation with cosine c,
    /// sine s, and phase: col_p <- c col_p - s conj(phase) col_q,
    /// col_q <- s phase col_p + c col_q.
    fn rotate_cols(&mut self, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
        let wp = phase.conj() * s;
        let wq = phase * s;
        for i in 0..self.rows {
            let ap = self.get(i, p);
            let aq = self.get(i, q);
            self.set(i, p, ap * c - aq * wp);
            self.set(i, q, ap * wq + aq * c);
        }
    }
}

/// Thin SVD A = U diag(sigma) V*, singular values sorted descending.
///
/// U is m-by-n with orthonormal columns where sigma > 0 (columns for zero
/// singular values are zero); V is n-by-n unitary. Requires m >= n.
pub(crate) struct Svd {
    pub(crate) u: RectMatrix,
    pub(crate) sigma: Vec<f64>,
    pub(crate) v: ComplexMatrix,
}

pub(crate) fn svd(a: &RectMatrix) -> Result<Svd> {
    let (m, n) = (a.rows, a.cols);
    assert!(m >= n, "one-sided Jacobi needs rows >= cols");
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let fro: f64 = w.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let dead = (ZERO_COL_TOL * fro) * (ZERO_COL_TOL * fro);

    let mut converged = false;
    let mut sweeps = 0;
    let mut worst = 0.0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off: worst });
        }
        converged = true;
        worst = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut gamma = 0.0;
                let mut beta = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let ap = w.get(i, p);
                    let aq = w.get(i, q);
                    alpha += ap.norm_sqr();
                    gamma += aq.norm_sqr();
                    beta += ap.conj() * aq;
                }
                let babs = beta.norm();
                let scale = (alpha * gamma).sqrt();
                if scale == 0.0 || babs <= PAIR_TOL * scale || alpha.min(gamma) <= dead {
                    continue;
                }
                worst = f64::max(worst, babs / scale);
                converged = false;
                let phase = beta / babs;
                let tau = (gamma - alpha) / (2.0 * babs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                w.rotate_cols(p, q, c, s, phase);
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * (phase.conj() * s);
                    v[(i, q)] = vp * (phase * s) + vq * c;
                }
            }
        }
        sweeps += 1;
    }

    let mut sigma: Vec<f64> = (0..n)
        .map(|j| w.col(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let mut u = RectMatrix::zeros(m, n);
    let mut vs = ComplexMatrix::zeros(n);
    let mut sorted = vec![0.0; n];
    for (dst, &src) in order.iter().enumerate() {
        sorted[dst] = sigma[src];
        if sigma[src] > 0.0 {
            let inv = 1.0 / sigma[src];
            for i in 0..m {
                u.set(i, dst, w.get(i, src) * inv);
            }
        }
        for i in 0..n {
            vs[(i, dst)] = v[(i, src)];
        }
    }
    sigma = sorted;
    Ok(Svd { u, sigma, v: vs })
}

/// Minimum-norm least-squares solution of A x = b: among all minimizers of
/// ||A x - b||, the one of smallest norm. Singular values at or below
/// `rel_cutoff` times the largest are treated as zero.
pub(crate) fn min_norm_lstsq(
    a: &RectMatrix,
    b: &[Complex64],
    rel_cutoff: f64,
) -> Result<Vec<Complex64>> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let dec = svd(a)?;
    let n = a.cols;
    let cutoff = rel_cutoff * dec.sigma.first().copied().unwrap_or(0.0);
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        if dec.sigma[j] <= cutoff || dec.sigma[j] == 0.0 {
            continue;
        }
        let mut coeff = Complex64::new(0.0, 0.0);
        for (i, bi) in b.iter().enumerate() {
            coeff += dec.u.get(i, j).conj() * bi;
        }
        coeff /= dec.sigma[j];
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += dec.v[(i, j)] * coeff;
        }
    }
    Ok(x)
}

/// Number of singular values exceeding `rel_tol` times the largest one;
/// 0 for the zero matrix. Hermitian input goes through the eigensolver
/// (singular values are then eigenvalue magnitudes).
pub fn numeric_rank(m: &ComplexMatrix, rel_tol: f64) -> usize {
    assert!(rel_tol > 0.0, "relative tolerance must be positive");
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return 0;
    }
    let mags: Vec<f64> = if m.hermitian_deviation() <= HERMITICITY_TOL * norm {
        let eig = eig_hermitian(m).expect("hermitian path");
        eig.values.iter().map(|v| v.abs()).collect()
    } else {
        let n = m.dim();
        let mut r = RectMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j, m[(i, j)]);
            }
        }
        svd(&r).expect("svd convergence").sigma
    };
    let top = mags.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    mags.iter().filter(|&&s| s > rel_tol * top).count()
}
