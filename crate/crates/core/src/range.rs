//! Support-function sweeps of the rank-k numerical ranges, disk verdicts,
//! rank constancy, direct isospectrality, and boundary polygons.

use num_complex::Complex64;

use crate::defaults::{RANK_REL_TOL, SWEEP_TOL};
use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_part, is_nilpotent, ComplexMatrix};

/// Support-function samples of one rank-k range over an angle grid, with
/// the disk-at-zero verdict.
///
/// `support[j]` is the k-th largest eigenvalue of the Hermitian part at
/// angle `thetas[j]`. `radius` is None when the half-plane intersection is
/// empty; otherwise the mean support value clamped at zero.
#[derive(Debug, Clone)]
pub struct RangeProfile {
    pub k: usize,
    pub thetas: Vec<f64>,
    pub support: Vec<f64>,
    pub radius: Option<f64>,
    pub is_disk_at_zero: bool,
    pub tol_used: f64,
}

impl RangeProfile {
    /// Scaled disk statistic: the larger of the support spread and the
    /// amount the support dips below zero, relative to 1 + ||B||_F. The
    /// disk verdict is this statistic against tol_used.
    pub fn disk_statistic(&self) -> f64 {
        let max = self.support.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = self.support.iter().cloned().fold(f64::INFINITY, f64::min);
        f64::max(max - min, -min)
    }
}

/// Ranks of the Hermitian part across the angle grid.
#[derive(Debug, Clone)]
pub struct RankProfile {
    pub thetas: Vec<f64>,
    pub ranks: Vec<usize>,
    pub constant: bool,
}

fn grid(samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / samples as f64)
        .collect()
}

/// Clip a convex polygon against the half-plane
/// x cos(theta) + y sin(theta) <= c.
fn clip_halfplane(poly: &[Complex64], cos_t: f64, sin_t: f64, c: f64) -> Vec<Complex64> {
    let value = |z: &Complex64| z.re * cos_t + z.im * sin_t;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let fa = value(&a);
        let fb = value(&b);
        if fa <= c {
            out.push(a);
        }
        if (fa <= c) != (fb <= c) {
            let t = (c - fa) / (fb - fa);
            out.push(a + (b - a) * t);
        }
    }
    out
}

fn polygon_from_support(thetas: &[f64], support: &[f64], norm: f64) -> Vec<Complex64> {
    let slack = 1e-13 * (1.0 + norm);
    if support.iter().all(|s| s.abs() <= slack) {
        // Every half-plane passes essentially through the origin; the
        // intersection degenerates to the single point 0.
        return vec![Complex64::new(0.0, 0.0)];
    }
    let half = 2.0 * norm.max(1e-30);
    let mut poly = vec![
        Complex64::new(-half, -half),
        Complex64::new(half, -half),
        Complex64::new(half, half),
        Complex64::new(-half, half),
    ];
    for (t, s) in thetas.iter().zip(support) {
        poly = clip_halfplane(&poly, t.cos(), t.sin(), s + slack);
        if poly.is_empty() {
            return poly;
        }
    }
    // Merge consecutive near-duplicate vertices left by the clipping.
    let merge = 1e-12 * (1.0 + norm);
    let mut dedup: Vec<Complex64> = Vec::with_capacity(poly.len());
    for v in poly {
        if dedup.last().is_none_or(|p| (v - p).norm() > merge) {
            dedup.push(v);
        }
    }
    if dedup.len() > 1 {
        let first = dedup[0];
        if (dedup.last().unwrap() - first).norm() <= merge {
            dedup.pop();
        }
    }
    dedup
}

/// Sample the k-th support function lambda_k(H(theta)) on an equispaced
/// grid and decide whether the rank-k range is a disk centered at zero.
pub fn support_sweep(b: &ComplexMatrix, k: usize, samples: usize) -> Result<RangeProfile> {
    let n = b.dim();
    assert!(k >= 1 && k <= n, "rank index out of range");
    assert!(samples >= 8, "grid too coarse");
    let norm = b.frobenius_norm();
    let thetas = grid(samples);
    let mut support = Vec::with_capacity(samples);
    for &t in &thetas {
        let eig = eig_hermitian(&hermitian_part(b, t))?;
        support.push(eig.values[k - 1]);
    }
    let tol_used = SWEEP_TOL;
    let max = support.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = support.iter().cloned().fold(f64::INFINITY, f64::min);
    let bound = tol_used * (1.0 + norm);
    let is_disk_at_zero = (max - min) <= bound && min >= -bound;
    let radius = if polygon_from_support(&thetas, &support, norm).is_empty() {
        None
    } else {
        let mean = support.iter().sum::<f64>() / samples as f64;
        Some(mean.max(0.0))
    };
    Ok(RangeProfile {
        k,
        thetas,
        support,
        radius,
        is_disk_at_zero,
        tol_used,
    })
}

/// Counterclockwise vertices of the intersection of the sampled support
/// half-planes, an outer approximation of the rank-k range that tightens
/// as the grid refines. Empty when the intersection is infeasible.
pub fn range_polygon(b: &ComplexMatrix, k: usize, samples: usize) -> Result<Vec<Complex64>> {
    let profile = support_sweep(b, k, samples)?;
    Ok(polygon_from_support(
        &profile.thetas,
        &profile.support,
        b.frobenius_norm(),
    ))
}

/// Numeric rank of the Hermitian part at each grid angle.
pub fn rank_sweep(b: &ComplexMatrix, samples: usize, rel_tol: f64) -> Result<RankProfile> {
    assert!(samples >= 8, "grid too coarse");
    assert!(rel_tol > 0.0, "relative tolerance must be positive");
    let thetas = grid(samples);
    let mut ranks = Vec::with_capacity(samples);
    for &t in &thetas {
        let eig = eig_hermitian(&hermitian_part(b, t))?;
        let top = eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let rank = if top == 0.0 {
            0
        } else {
            eig.values.iter().filter(|v| v.abs() > rel_tol * top).count()
        };
        ranks.push(rank);
    }
    let constant = ranks.windows(2).all(|w| w[0] == w[1]);
    Ok(RankProfile {
        thetas,
        ranks,
        constant,
    })
}

/// Direct spectral-constancy check: the sorted spectrum of every H(theta_j)
/// must match that of H(0) entrywise within tol * (1 + ||B||_F). For
/// Hermitian matrices equal spectra mean unitary similarity, so this also
/// decides the similarity formulation.
pub fn isospectral_check_direct(b: &ComplexMatrix, samples: usize, tol: f64) -> Result<bool> {
    Ok(spectral_sweep_deviation(b, samples)? <= tol * (1.0 + b.frobenius_norm()))
}

/// Largest entrywise deviation between the sorted spectrum of H(theta) and
/// that of H(0), over the grid.
pub fn spectral_sweep_deviation(b: &ComplexMatrix, samples: usize) -> Result<f64> {
    assert!(samples >= 8, "grid too coarse");
    let reference = eig_hermitian(&hermitian_part(b, 0.0))?.values;
    let mut worst = 0.0f64;
    for &t in &grid(samples) {
        let values = eig_hermitian(&hermitian_part(b, t))?.values;
        for (a, r) in values.iter().zip(&reference) {
            worst = worst.max((a - r).abs());
        }
    }
    Ok(worst)
}

/// Disk-and-rank formulation: every rank-k range for k up to ceil(n/2) is a
/// disk centered at zero, and the rank of H(theta) is constant on the grid.
pub fn check_condition_iii(b: &ComplexMatrix, samples: usize, tol: f64) -> Result<bool> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = b.dim();
    let norm = b.frobenius_norm();
    let bound = tol * (1.0 + norm);
    for k in 1..=n.div_ceil(2) {
        let profile = support_sweep(b, k, samples)?;
        if profile.disk_statistic() > bound {
            return Ok(false);
        }
    }
    Ok(rank_sweep(b, samples, RANK_REL_TOL)?.constant)
}

/// Small-dimension shortcut (n <= 4): nilpotent plus a rank-1 disk at zero
/// already decides spectral constancy.
pub fn check_corollary_small_n(b: &ComplexMatrix, samples: usize, tol: f64) -> Result<bool> {
    let n = b.dim();
    if n > 4 {
        return Err(Error::DimensionTooLarge { n, max: 4 });
    }
    if !is_nilpotent(b, tol) {
        return Ok(false);
    }
    let profile = support_sweep(b, 1, samples)?;
    Ok(profile.disk_statistic() <= tol * (1.0 + b.frobenius_norm()))
}
