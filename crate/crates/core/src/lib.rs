//! Spectral analysis of the trigonometric Hermitian family
//! L(t) = cos t * H1 + sin t * H2 built from a complex square matrix B,
//! where H1 and H2 are the Hermitian and skew parts of B.
//!
//! The crate decides whether the eigenvalues of L(t) stay constant in t and
//! certifies the verdict along several independent routes: direct spectral
//! sweeps, trace sums over words in B and B*, numerical-range geometry of
//! compressions, a rotational-symmetry witness K with [K, B] = -i B, and a
//! unitary flow transported by time-dependent generators.
//!
//! Dense matrices up to moderate dimension only; everything is computed with
//! Jacobi-type two-sided and one-sided rotations, no external linear algebra
//! backend.

pub mod defaults;
mod eig;
mod error;
mod lax;
mod matrix;
mod range;
mod svd;
mod symmetry;
mod words;

pub use num_complex::Complex64;

pub use eig::{eig_hermitian, expm_skew, HermitianEig};
pub use error::{Error, Result};
pub use lax::{eigenpath_v, integrate_u, solve_p, verify_lax, LaxTrajectory};
pub use matrix::{commutator, hermitian_part, is_nilpotent, trace_power, ComplexMatrix};
pub use range::{
    check_condition_iii, check_corollary_small_n, isospectral_check_direct, range_polygon,
    rank_sweep, spectral_sweep_deviation, support_sweep, RangeProfile, RankProfile,
};
pub use svd::numeric_rank;
pub use symmetry::{
    block_decompose, bounded_word_check, solve_k, verify_rotation_similarity, BlockDecomposition,
    CommutatorSolution,
};
pub use words::{
    check_condition_ii, fourier_coefficient_fk, spectra_equal_by_moments, trace_word,
    word_trace_sum, Letter, Word, WordConditionReport,
};
