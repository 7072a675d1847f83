//! Default tolerances and budgets.
//!
//! Every threshold used by the certification checks is defined here rather than
//! inline at the call sites, so that reports can record the exact stack of
//! tolerances an analysis ran with.

/// Relative accuracy expected of the Jacobi eigendecomposition. Residuals of
/// reconstruction and orthonormality stay below this at desk scale (n <= 50).
pub const EIG_TOL: f64 = 1e-10;

/// Relative deviation allowed when classifying a matrix as Hermitian or
/// skew-adjoint.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Relative singular-value cutoff for numeric rank decisions and for the
/// rank-revealing step of the min-norm least-squares solver.
pub const RANK_REL_TOL: f64 = 1e-10;

/// Scaled threshold on word-trace sums: a sum for word length k counts as
/// zero when its modulus is at most `WORD_TOL * (1 + ||B||_F^k)`.
pub const WORD_TOL: f64 = 1e-9;

/// Scaled threshold for the disk verdict and the direct spectral-constancy
/// verdict of the sweep checks. Eigensolver error dominates sampling error
/// at the default grid resolution, so this sits well above `EIG_TOL`.
pub const SWEEP_TOL: f64 = 1e-8;

/// Scaled residual below which a skew-adjoint commutator witness counts as
/// existing.
pub const K_EXISTS_TOL: f64 = 1e-8;

/// Gap threshold for clustering eigenvalues of -iK in the block
/// decomposition.
pub const CLUSTER_GAP_TOL: f64 = 1e-6;

/// Two eigenvalue clusters belong to the same superdiagonal chain when their
/// values differ from 1 by at most this.
pub const CHAIN_SPACING_TOL: f64 = 1e-6;

/// Scaled residual bound for the per-angle Lax generator solve.
pub const LAX_RESIDUAL_TOL: f64 = 1e-8;

/// Default number of equispaced angles for sweep operations. Trigonometric
/// polynomials of degree <= n are heavily oversampled at this resolution, so
/// verdicts are limited by eigensolver accuracy, not sampling.
pub const DEFAULT_SAMPLES: usize = 720;

/// Default number of Runge-Kutta steps over [0, 2pi] for the Lax flow.
pub const DEFAULT_LAX_STEPS: usize = 2000;

/// Work budget for word enumerations, measured in letter-multiplications.
/// Covers every `(k, l)` sum through k = 20 and cyclic scans through
/// length 19.
pub const DEFAULT_WORD_BUDGET: u128 = 10_000_000;
