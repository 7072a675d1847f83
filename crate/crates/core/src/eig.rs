//! Hermitian eigendecomposition by cyclic Jacobi rotations, and the unitary
//! exponential of a skew-adjoint generator.

use num_complex::Complex64;

use crate::defaults::HERMITICITY_TOL;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_part, ComplexMatrix};

const MAX_SWEEPS: usize = 30;
const OFF_DIAG_REL: f64 = 1e-13;

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` are sorted descending (largest first); column j of `vectors` is
/// a unit eigenvector for `values[j]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// ||H V - V diag(values)||_F for the matrix this was computed from.
    pub fn reconstruction_residual(&self, h: &ComplexMatrix) -> f64 {
        let n = h.dim();
        let hv = h * &self.vectors;
        let mut vd = self.vectors.clone();
        for c in 0..n {
            for r in 0..n {
                vd[(r, c)] *= self.values[c];
            }
        }
        hv.distance(&vd)
    }

    /// ||V* V - I||_F.
    pub fn orthonormality_residual(&self) -> f64 {
        let vtv = &self.vectors.adjoint() * &self.vectors;
        vtv.distance(&ComplexMatrix::identity(self.vectors.dim()))
    }
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalize a Hermitian matrix by cyclic Jacobi rotations.
///
/// Rejects input whose deviation from Hermitian exceeds
/// `HERMITICITY_TOL * ||H||_F`; the working copy is symmetrized so the
/// iteration itself sees an exactly Hermitian matrix. Convergence is reached
/// when the off-diagonal Frobenius mass drops below `1e-13 * ||H||_F`,
/// within at most 30 sweeps.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEig> {
    let n = h.dim();
    let norm = h.frobenius_norm();
    let deviation = h.hermitian_deviation();
    if deviation > HERMITICITY_TOL * norm {
        return Err(Error::NotHermitian {
            deviation,
            bound: HERMITICITY_TOL * norm,
        });
    }

    let mut a = hermitian_part(h, 0.0);
    let mut v = ComplexMatrix::identity(n);
    let off_tol = OFF_DIAG_REL * norm;
    // Entries this small cannot lift the off-diagonal mass above off_tol.
    let entry_tol = off_tol / (2.0 * n as f64);

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > off_tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = a[(p, q)];
                let babs = beta.norm();
                if babs <= entry_tol {
                    continue;
                }
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let phase = beta / babs;
                let tau = (gamma - alpha) / (2.0 * babs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    let np = apj * c - aqj * (phase * s);
                    let nq = apj * (phase.conj() * s) + aqj * c;
                    a[(p, j)] = np;
                    a[(q, j)] = nq;
                    a[(j, p)] = np.conj();
                    a[(j, q)] = nq.conj();
                }
                a[(p, p)] = Complex64::new(c * c * alpha - 2.0 * c * s * babs + s * s * gamma, 0.0);
                a[(q, q)] = Complex64::new(s * s * alpha + 2.0 * c * s * babs + c * c * gamma, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * (phase.conj() * s);
                    v[(i, q)] = vip * (phase * s) + viq * c;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values: Vec<f64> = idx.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, idx[c])]);
    Ok(HermitianEig { values, vectors })
}

/// e^{tK} for skew-adjoint K, through the eigendecomposition of the
/// Hermitian matrix iK: if iK = V diag(d) V*, then e^{tK} = V e^{-itd} V*.
pub fn expm_skew(k: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let deviation = k.skew_deviation();
    let bound = HERMITICITY_TOL * (1.0 + k.frobenius_norm());
    if deviation > bound {
        return Err(Error::NotSkewAdjoint { deviation, bound });
    }
    let n = k.dim();
    let ik = k.scale(Complex64::new(0.0, 1.0));
    let eig = eig_hermitian(&hermitian_part(&ik, 0.0))?;
    let mut w = eig.vectors.clone();
    for c in 0..n {
        let ph = Complex64::from_polar(1.0, -t * eig.values[c]);
        for r in 0..n {
            w[(r, c)] *= ph;
        }
    }
    Ok(&w * &eig.vectors.adjoint())
}
