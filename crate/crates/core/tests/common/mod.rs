#![allow(dead_code)]

use isopencil::{Complex64, ComplexMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The 4x4 strictly upper triangular example with constant spectrum
/// (+-1, +-1/2) but no constant rotational witness.
pub fn four_dim_example() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 1.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0, -1.0],
        vec![0.0, 0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0],
    ])
}

/// The 5x5 nilpotent example whose rank-one numerical range is the closed
/// unit disk even though the spectrum of the pencil moves.
pub fn disk_counterexample() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 2.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0, 0.0],
    ])
}

/// The 5x5 example satisfying every trace-sum condition without a constant
/// rotational witness.
pub fn five_dim_example() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 1.0, 0.5, 1.0, 0.0],
        vec![0.0, 0.0, 1.0, -1.0, -1.0],
        vec![0.0, 0.0, 0.0, 1.0, 1.5],
        vec![0.0, 0.0, 0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0, 0.0],
    ])
}

/// A reference time-dependent generator for the four-dimensional example,
/// found independently: entries -i/2, i, 3i/2 on the diagonal and
/// +-i e^{-+2it}/2 in the corners.
pub fn reference_generator(t: f64) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(4);
    p[(0, 0)] = Complex64::new(0.0, -0.5);
    p[(2, 2)] = Complex64::new(0.0, 1.0);
    p[(3, 3)] = Complex64::new(0.0, 1.5);
    p[(0, 3)] = Complex64::new(0.0, 0.5) * Complex64::from_polar(1.0, -2.0 * t);
    p[(3, 0)] = Complex64::new(0.0, 0.5) * Complex64::from_polar(1.0, 2.0 * t);
    p
}

/// Known eigenvectors of the Hermitian part of the four-dimensional example
/// at angle 0, as (eigenvalue, column) pairs.
pub fn reference_eigenvectors_at_zero() -> Vec<(f64, Vec<f64>)> {
    vec![
        (-1.0, vec![0.0, 2.0, -2.0, 2.0]),
        (-0.5, vec![-2.0, 1.0, 1.0, 0.0]),
        (0.5, vec![0.0, -1.0, 1.0, 2.0]),
        (1.0, vec![2.0, 2.0, 2.0, 0.0]),
    ]
}

pub fn random_dense(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn random_strict_upper(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| {
        if j > i {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
