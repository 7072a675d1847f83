//! Traces of words in B and B*, the per-(k,l) trace sums, their Fourier
//! cross-check, and moment-based spectrum comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::defaults::DEFAULT_WORD_BUDGET;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_part, trace_power, ComplexMatrix};

/// One letter of a word: the matrix itself or its adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    B,
    BStar,
}

/// A nonempty product string over {B, B*}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        assert!(!letters.is_empty(), "words must be nonempty");
        Self { letters }
    }

    /// Word from a compact pattern: 'b' or 'B' for B, 's' or '*' for B*.
    pub fn from_pattern(pattern: &str) -> Self {
        let letters = pattern
            .chars()
            .map(|ch| match ch {
                'b' | 'B' => Letter::B,
                's' | '*' => Letter::BStar,
                _ => panic!("unknown letter {ch:?}"),
            })
            .collect();
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of appearances of one letter.
    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l {
                Letter::B => write!(f, "B")?,
                Letter::BStar => write!(f, "B*")?,
            }
        }
        Ok(())
    }
}

/// Evaluation of every trace-sum condition entry for one matrix:
/// sums over all words of length k with l adjoint letters, for
/// 1 <= k <= n and 0 <= l < k/2.
#[derive(Debug, Clone)]
pub struct WordConditionReport {
    pub n: usize,
    pub sums: BTreeMap<(usize, usize), Complex64>,
    pub max_abs: f64,
    /// Largest |sum| / (1 + ||B||_F^k); the satisfied verdict compares this
    /// against tol_used.
    pub max_scaled: f64,
    pub satisfied: bool,
    pub tol_used: f64,
    /// Entries whose scaled magnitude exceeds tol_used, in lexicographic
    /// (k, l) order.
    pub violations: Vec<(usize, usize)>,
}

impl WordConditionReport {
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        self.violations.first().copied()
    }
}

/// Trace of the product formed by substituting B and B* for the letters,
/// left to right.
pub fn trace_word(b: &ComplexMatrix, w: &Word) -> Complex64 {
    let bstar = b.adjoint();
    let mut prod = ComplexMatrix::identity(b.dim());
    for l in w.letters() {
        prod = match l {
            Letter::B => &prod * b,
            Letter::BStar => &prod * &bstar,
        };
    }
    prod.trace()
}

fn binomial(k: usize, l: usize) -> u128 {
    let l = l.min(k - l);
    let mut c: u128 = 1;
    for i in 0..l {
        c = c * (k - i) as u128 / (i + 1) as u128;
    }
    c
}

fn sum_words(
    b: &ComplexMatrix,
    bstar: &ComplexMatrix,
    prefix: &ComplexMatrix,
    rem_b: usize,
    rem_star: usize,
    acc: &mut Complex64,
) {
    if rem_b == 0 && rem_star == 0 {
        *acc += prefix.trace();
        return;
    }
    if rem_b > 0 {
        sum_words(b, bstar, &(prefix * b), rem_b - 1, rem_star, acc);
    }
    if rem_star > 0 {
        sum_words(b, bstar, &(prefix * bstar), rem_b, rem_star - 1, acc);
    }
}

/// Sum of trace_word over all C(k,l) words of length k with exactly l
/// adjoint letters. Enumerates depth-first with shared prefix products;
/// errors with ComplexityLimit when C(k,l)*k exceeds the default budget.
pub fn word_trace_sum(b: &ComplexMatrix, k: usize, l: usize) -> Result<Complex64> {
    assert!(k >= 1, "word length must be positive");
    assert!(l <= k, "adjoint count exceeds length");
    let cost = binomial(k, l).saturating_mul(k as u128);
    if cost > DEFAULT_WORD_BUDGET {
        return Err(Error::ComplexityLimit {
            cost,
            budget: DEFAULT_WORD_BUDGET,
        });
    }
    let bstar = b.adjoint();
    let mut acc = Complex64::new(0.0, 0.0);
    sum_words(
        b,
        &bstar,
        &ComplexMatrix::identity(b.dim()),
        k - l,
        l,
        &mut acc,
    );
    Ok(acc)
}

/// Evaluate the full condition grid: every (k, l) with 1 <= k <= n,
/// 0 <= l < k/2, with the per-entry scaled threshold tol * (1 + ||B||_F^k).
pub fn check_condition_ii(b: &ComplexMatrix, tol: f64) -> Result<WordConditionReport> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = b.dim();
    let norm = b.frobenius_norm();
    let mut sums = BTreeMap::new();
    let mut max_abs: f64 = 0.0;
    let mut max_scaled: f64 = 0.0;
    let mut violations = Vec::new();
    for k in 1..=n {
        for l in 0..=(k - 1) / 2 {
            let sum = word_trace_sum(b, k, l)?;
            let scaled = sum.norm() / (1.0 + norm.powi(k as i32));
            max_abs = max_abs.max(sum.norm());
            max_scaled = max_scaled.max(scaled);
            if scaled > tol {
                violations.push((k, l));
            }
            sums.insert((k, l), sum);
        }
    }
    Ok(WordConditionReport {
        n,
        sums,
        max_abs,
        max_scaled,
        satisfied: violations.is_empty(),
        tol_used: tol,
        violations,
    })
}

/// Coefficient of e^{imt} in f_k(t) = 2^k Tr [H(t)]^k, where H(t) is the
/// Hermitian part at angle t. Sampled at 4k equispaced angles; on that
/// oversampled grid the discrete Fourier projection is the least-squares
/// coefficient exactly.
pub fn fourier_coefficient_fk(b: &ComplexMatrix, k: usize, m: i64) -> Complex64 {
    assert!(k >= 1 && k <= b.dim(), "order out of range");
    assert!(m.unsigned_abs() as usize <= k, "frequency out of range");
    assert!(
        (m.rem_euclid(2)) == (k as i64).rem_euclid(2),
        "frequency parity must match order"
    );
    let samples = 4 * k;
    let two_k = 2f64.powi(k as i32);
    let mut coeff = Complex64::new(0.0, 0.0);
    for j in 0..samples {
        let t = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let fk = two_k * trace_power(&hermitian_part(b, t), k).re;
        coeff += Complex64::from_polar(1.0, -(m as f64) * t) * fk;
    }
    coeff / samples as f64
}

/// Moment test for equal spectra: |Tr M1^k - Tr M2^k| within
/// tol * (1 + max norm^k) for k = 1..n.
pub fn spectra_equal_by_moments(m1: &ComplexMatrix, m2: &ComplexMatrix, tol: f64) -> bool {
    assert_eq!(m1.dim(), m2.dim(), "dimension mismatch");
    let n = m1.dim();
    let norm = f64::max(m1.frobenius_norm(), m2.frobenius_norm());
    for k in 1..=n {
        let diff = (trace_power(m1, k) - trace_power(m2, k)).norm();
        if diff > tol * (1.0 + norm.powi(k as i32)) {
            return false;
        }
    }
    true
}
