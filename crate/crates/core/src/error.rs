use thiserror::Error;

/// Errors surfaced by the numeric kernels and certification checks.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input matrix is not Hermitian within the hermiticity tolerance.
    #[error("matrix is not Hermitian: ||H - H*|| = {deviation:.3e} exceeds {bound:.3e}")]
    NotHermitian { deviation: f64, bound: f64 },

    /// Input matrix is not skew-adjoint within the hermiticity tolerance.
    #[error("matrix is not skew-adjoint: ||K + K*|| = {deviation:.3e} exceeds {bound:.3e}")]
    NotSkewAdjoint { deviation: f64, bound: f64 },

    /// The Jacobi eigensolver did not converge within the sweep limit.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A word enumeration would exceed the configured work budget.
    #[error("word enumeration cost {cost} exceeds budget {budget}")]
    ComplexityLimit { cost: u128, budget: u128 },

    /// Eigenvalue clustering is ambiguous: a gap fell between the cluster
    /// tolerance and ten times the cluster tolerance.
    #[error("ambiguous eigenvalue cluster: gap {gap:.3e} lies in ({tol:.3e}, {ten_tol:.3e})")]
    ClusterAmbiguity { gap: f64, tol: f64, ten_tol: f64 },

    /// The spectrum has a near-degenerate eigenvalue pair where a simple
    /// spectrum is required.
    #[error("degenerate spectrum: eigenvalue gap {gap:.3e} below {bound:.3e}")]
    DegenerateSpectrum { gap: f64, bound: f64 },

    /// The least-squares commutator solve left a residual too large for the
    /// pencil to be isospectral.
    #[error("Lax residual {residual:.3e} exceeds {bound:.3e}; the pencil is not isospectral")]
    ResidualTooLarge { residual: f64, bound: f64 },

    /// The operation is only defined for matrices up to a dimension cap.
    #[error("dimension {n} exceeds the supported maximum {max} for this check")]
    DimensionTooLarge { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
