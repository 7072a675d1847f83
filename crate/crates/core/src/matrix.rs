//! Dense square complex matrices and the elementary operations every other
//! module is built on.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense n-by-n complex matrix, row major.
///
/// Carrier for B, its Hermitian parts, skew-adjoint generators, and unitary
/// flows. Comparisons are always tolerance based (Frobenius norm); entries
/// are expected to be finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a generator over (row, col).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from complex rows; every row must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    /// Build from real rows (imaginary parts zero). Panics on ragged input;
    /// intended for literals.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| {
            assert_eq!(rows[i].len(), n, "ragged rows");
            Complex64::new(rows[i][j], 0.0)
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// The n-by-n nilpotent Jordan block (ones on the superdiagonal).
    pub fn jordan_block(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if j == i + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&w| w * z).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance to another matrix.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Tolerance-based equality in Frobenius norm.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.distance(other) <= tol
    }

    /// ||M - M*||_F, zero exactly for Hermitian matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        self.distance(&self.adjoint())
    }

    /// ||M + M*||_F, zero exactly for skew-adjoint matrices.
    pub fn skew_deviation(&self) -> f64 {
        let adj = self.adjoint();
        self.data
            .iter()
            .zip(&adj.data)
            .map(|(a, b)| (a + b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                let z = self[(i, j)];
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Hermitian part at angle theta: H(theta) = (e^{-i theta} B + e^{i theta} B*) / 2.
///
/// The result is Hermitian exactly: entry (p, q) is assembled together with
/// its conjugate at (q, p), and diagonal imaginary parts cancel to 0.0.
pub fn hermitian_part(b: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    let n = b.dim();
    let phase = Complex64::from_polar(1.0, -theta);
    let m = b.scale(phase);
    ComplexMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}

/// Commutator [X, Y] = XY - YX.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(&(x * y) - &(y * x))
}

/// Tr(B^k) for k >= 1.
pub fn trace_power(b: &ComplexMatrix, k: usize) -> Complex64 {
    assert!(k >= 1, "power must be at least 1");
    let mut p = b.clone();
    for _ in 1..k {
        p = &p * b;
    }
    p.trace()
}

/// Moment-based nilpotency test: |Tr B^k| <= tol * (1 + ||B||_F^k) for
/// k = 1..n. By Newton's identities this pins every eigenvalue at zero.
pub fn is_nilpotent(b: &ComplexMatrix, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = b.dim();
    let norm = b.frobenius_norm();
    let mut p = ComplexMatrix::identity(n);
    for k in 1..=n {
        p = &p * b;
        if p.trace().norm() > tol * (1.0 + norm.powi(k as i32)) {
            return false;
        }
    }
    true
}
