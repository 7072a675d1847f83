//! Time-dependent generator solving Lax's equation, Runge-Kutta transport
//! of the unitary flow, and the eigenvector-path alternative.

use num_complex::Complex64;

use crate::defaults::LAX_RESIDUAL_TOL;
use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_part, ComplexMatrix};
use crate::symmetry::min_norm_skew_commutator;

/// Discrete unitary flow U(t) with U' = P(t) U, U(0) = I, over [0, 2pi].
///
/// `max_similarity_error` is the worst Frobenius deviation of
/// U(t) L(0) U(t)* from L(t); `max_unitarity_error` the worst deviation of
/// U* U from I.
#[derive(Debug, Clone)]
pub struct LaxTrajectory {
    pub t_grid: Vec<f64>,
    pub p_samples: Vec<ComplexMatrix>,
    pub u_samples: Vec<ComplexMatrix>,
    pub max_similarity_error: f64,
    pub max_unitarity_error: f64,
}

/// Minimal-Frobenius-norm skew-adjoint P with [P, L(t)] = L'(t), where
/// L(t) is the Hermitian part at angle t. A residual above
/// tol * (1 + ||B||_F) means no solution exists, which rules out spectral
/// constancy of the pencil.
pub fn solve_p(b: &ComplexMatrix, t: f64, tol: f64) -> Result<ComplexMatrix> {
    assert!(tol > 0.0, "tolerance must be positive");
    let l = hermitian_part(b, t);
    let lp = l_prime(b, t);
    let (p, residual) = min_norm_skew_commutator(&l, &lp)?;
    let bound = tol * (1.0 + b.frobenius_norm());
    if residual > bound {
        return Err(Error::ResidualTooLarge { residual, bound });
    }
    Ok(p)
}

fn l_prime(b: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let a1 = hermitian_part(b, 0.0);
    let a2 = hermitian_part(b, std::f64::consts::FRAC_PI_2);
    &a1.scale(Complex64::new(-t.sin(), 0.0)) + &a2.scale(Complex64::new(t.cos(), 0.0))
}

/// Number of eigenvalue clusters at gap threshold `gap`, plus the smallest
/// positive gap (descending-sorted input).
fn cluster_count(values: &[f64], gap: f64) -> (usize, f64) {
    let mut clusters = 1;
    let mut min_gap = f64::INFINITY;
    for w in values.windows(2) {
        let g = w[0] - w[1];
        if g > gap {
            clusters += 1;
        }
        if g > 0.0 {
            min_gap = min_gap.min(g);
        }
    }
    (clusters, min_gap)
}

fn polar_unitary(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = &u.adjoint() * u;
    let eig = eig_hermitian(&h)?;
    let n = u.dim();
    let mut w = eig.vectors.clone();
    for c in 0..n {
        let inv = 1.0 / eig.values[c].max(f64::MIN_POSITIVE).sqrt();
        for r in 0..n {
            w[(r, c)] *= inv;
        }
    }
    Ok(&(u * &w) * &eig.vectors.adjoint())
}

/// Integrate U' = P(t) U over [0, 2pi] with classical fixed-step
/// Runge-Kutta, re-projecting onto the unitary group after every step.
///
/// The eigenvalue multiplicity pattern of L(t) is tracked along the grid;
/// a change would make the minimum-norm P discontinuous, so it is reported
/// as DegenerateSpectrum instead of silently integrated through.
pub fn integrate_u(b: &ComplexMatrix, steps: usize) -> Result<LaxTrajectory> {
    assert!(steps >= 16, "too few steps");
    let n = b.dim();
    let tau = 2.0 * std::f64::consts::PI;
    let h = tau / steps as f64;
    let gap_bound = 1e-8 * (1.0 + b.frobenius_norm());

    let l0 = hermitian_part(b, 0.0);
    let (ref_clusters, _) = cluster_count(&eig_hermitian(&l0)?.values, gap_bound);

    let mut u = ComplexMatrix::identity(n);
    let mut u_samples = Vec::with_capacity(steps + 1);
    let mut p_samples = Vec::with_capacity(steps + 1);
    u_samples.push(u.clone());
    p_samples.push(solve_p(b, 0.0, LAX_RESIDUAL_TOL)?);

    for j in 0..steps {
        let t = tau * j as f64 / steps as f64;
        let t_next = tau * (j + 1) as f64 / steps as f64;
        let p0 = p_samples[j].clone();
        let pm = solve_p(b, t + 0.5 * h, LAX_RESIDUAL_TOL)?;
        let p1 = solve_p(b, t_next, LAX_RESIDUAL_TOL)?;

        let eig_next = eig_hermitian(&hermitian_part(b, t_next))?;
        let (clusters, min_gap) = cluster_count(&eig_next.values, gap_bound);
        if clusters != ref_clusters {
            return Err(Error::DegenerateSpectrum {
                gap: min_gap,
                bound: gap_bound,
            });
        }

        let k1 = &p0 * &u;
        let k2 = &pm * &(&u + &k1.scale(Complex64::new(0.5 * h, 0.0)));
        let k3 = &pm * &(&u + &k2.scale(Complex64::new(0.5 * h, 0.0)));
        let k4 = &p1 * &(&u + &k3.scale(Complex64::new(h, 0.0)));
        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(Complex64::new(2.0, 0.0));
        u = &u + &incr.scale(Complex64::new(h / 6.0, 0.0));
        u = polar_unitary(&u)?;
        u_samples.push(u.clone());
        p_samples.push(p1);
    }

    let t_grid: Vec<f64> = (0..=steps).map(|j| tau * j as f64 / steps as f64).collect();
    let (max_similarity_error, max_unitarity_error) = flow_errors(b, &t_grid, &u_samples);
    Ok(LaxTrajectory {
        t_grid,
        p_samples,
        u_samples,
        max_similarity_error,
        max_unitarity_error,
    })
}

fn flow_errors(b: &ComplexMatrix, t_grid: &[f64], u_samples: &[ComplexMatrix]) -> (f64, f64) {
    let n = b.dim();
    let l0 = hermitian_part(b, 0.0);
    let id = ComplexMatrix::identity(n);
    let mut sim = 0.0f64;
    let mut unit = 0.0f64;
    for (t, u) in t_grid.iter().zip(u_samples) {
        let conj = &(u * &l0) * &u.adjoint();
        sim = sim.max(conj.distance(&hermitian_part(b, *t)));
        unit = unit.max((&u.adjoint() * u).distance(&id));
    }
    (sim, unit)
}

/// Recompute both flow error metrics for the trajectory against this
/// matrix and compare them to tol.
pub fn verify_lax(b: &ComplexMatrix, traj: &LaxTrajectory, tol: f64) -> bool {
    let (sim, unit) = flow_errors(b, &traj.t_grid, &traj.u_samples);
    sim <= tol && unit <= tol
}

/// Eigenvector matrices V(t) of L(t) along the grid, columns ordered by
/// descending eigenvalue, with phase continuity against the previous grid
/// point. Requires a simple spectrum all along the grid.
pub fn eigenpath_v(b: &ComplexMatrix, t_grid: &[f64]) -> Result<Vec<ComplexMatrix>> {
    let n = b.dim();
    let bound = 1e-8 * (1.0 + b.frobenius_norm());
    let mut out: Vec<ComplexMatrix> = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let eig = eig_hermitian(&hermitian_part(b, t))?;
        for w in eig.values.windows(2) {
            let gap = w[0] - w[1];
            if gap < bound {
                return Err(Error::DegenerateSpectrum { gap, bound });
            }
        }
        let mut v = eig.vectors;
        if let Some(prev) = out.last() {
            for c in 0..n {
                let mut overlap = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    overlap += prev[(r, c)].conj() * v[(r, c)];
                }
                if overlap.norm() > 0.0 {
                    let ph = overlap.conj() / overlap.norm();
                    for r in 0..n {
                        v[(r, c)] *= ph;
                    }
                }
            }
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::expm_skew;
    use crate::matrix::commutator;

    fn b_eq3() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ])
    }

    #[test]
    fn generator_solves_the_derivative_equation() {
        let b = b_eq3();
        for i in 0..12 {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 12.0;
            let p = solve_p(&b, t, 1e-9).unwrap();
            assert!(p.skew_deviation() <= 1e-12);
            let l = hermitian_part(&b, t);
            let res = (&commutator(&p, &l).unwrap() - &l_prime(&b, t)).frobenius_norm();
            assert!(res <= 1e-9, "t = {t}, residual {res}");
        }
    }

    #[test]
    fn constant_generator_is_a_solution() {
        // For B with a rotational witness K, P = K is t-independent:
        // differentiate e^{tK} L(0) e^{-tK} = L(t).
        let b = ComplexMatrix::jordan_block(3);
        let k = ComplexMatrix::diagonal(&[
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]);
        for i in 0..8 {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 8.0;
            let l = hermitian_part(&b, t);
            let res = (&commutator(&k, &l).unwrap() - &l_prime(&b, t)).frobenius_norm();
            assert!(res <= 1e-14, "t = {t}");
        }
    }

    #[test]
    fn non_isospectral_input_is_rejected() {
        let d = ComplexMatrix::diagonal(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]);
        assert!(matches!(
            solve_p(&d, std::f64::consts::FRAC_PI_4, 1e-8),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    #[test]
    fn short_flow_conjugates_the_pencil() {
        let b = b_eq3();
        let traj = integrate_u(&b, 250).unwrap();
        assert_eq!(traj.u_samples.len(), 251);
        assert!(traj.u_samples[0].approx_eq(&ComplexMatrix::identity(4), 0.0));
        assert!(
            traj.max_similarity_error <= 1e-7,
            "sim = {}",
            traj.max_similarity_error
        );
        assert!(
            traj.max_unitarity_error <= 1e-12,
            "unit = {}",
            traj.max_unitarity_error
        );
        assert!(verify_lax(&b, &traj, 1e-6));
        assert!(!verify_lax(&b, &traj, 1e-12));
        for p in &traj.p_samples {
            assert!(p.skew_deviation() <= 1e-10 * (1.0 + p.frobenius_norm()));
        }
    }

    #[test]
    fn zero_matrix_flow_is_identity() {
        let traj = integrate_u(&ComplexMatrix::zeros(3), 16).unwrap();
        assert_eq!(traj.max_similarity_error, 0.0);
        assert_eq!(traj.max_unitarity_error, 0.0);
        for u in &traj.u_samples {
            assert!(u.approx_eq(&ComplexMatrix::identity(3), 0.0));
        }
    }

    #[test]
    fn constant_generator_flow_matches_exponential() {
        let b = ComplexMatrix::jordan_block(3);
        let k = ComplexMatrix::diagonal(&[
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]);
        let traj = integrate_u(&b, 500).unwrap();
        for (t, u) in traj.t_grid.iter().zip(&traj.u_samples) {
            let closed = expm_skew(&k, *t).unwrap();
            assert!(
                u.distance(&closed) <= 1e-8,
                "t = {t}, dev = {}",
                u.distance(&closed)
            );
        }
    }

    #[test]
    fn eigenpath_tracks_constant_spectrum() {
        let b = b_eq3();
        let grid: Vec<f64> = (0..48)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / 48.0)
            .collect();
        let paths = eigenpath_v(&b, &grid).unwrap();
        let expect = [1.0, 0.5, -0.5, -1.0];
        for (t, v) in grid.iter().zip(&paths) {
            let l = hermitian_part(&b, *t);
            let lv = &l * v;
            let mut vd = v.clone();
            for c in 0..4 {
                for r in 0..4 {
                    vd[(r, c)] *= expect[c];
                }
            }
            assert!(lv.distance(&vd) <= 1e-8, "t = {t}");
        }
        // Phase continuity: consecutive eigenvector matrices stay close.
        for w in paths.windows(2) {
            assert!(w[0].distance(&w[1]) < 0.5);
        }
    }

    #[test]
    fn eigenpath_j2_closed_form() {
        let b = ComplexMatrix::jordan_block(2);
        let grid: Vec<f64> = (0..16)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / 16.0)
            .collect();
        let paths = eigenpath_v(&b, &grid).unwrap();
        for (t, v) in grid.iter().zip(&paths) {
            let l = hermitian_part(&b, *t);
            for (c, lam) in [(0usize, 0.5), (1usize, -0.5)] {
                for r in 0..2 {
                    let mut lv = Complex64::new(0.0, 0.0);
                    for s in 0..2 {
                        lv += l[(r, s)] * v[(s, c)];
                    }
                    assert!((lv - v[(r, c)] * lam).norm() <= 1e-12, "t = {t}");
                }
            }
        }
    }

    #[test]
    fn eigenpath_rejects_degenerate_spectrum() {
        let grid = [0.0, 0.1];
        assert!(matches!(
            eigenpath_v(&ComplexMatrix::zeros(2), &grid),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }
}
