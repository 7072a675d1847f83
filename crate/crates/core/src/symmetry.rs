//! Rotational-symmetry machinery: solving [K,B] = -iB over skew-adjoint K,
//! verifying the induced phase conjugation, the block-superdiagonal change
//! of basis, and bounded word-trace scans.

use num_complex::Complex64;

use crate::defaults::{CHAIN_SPACING_TOL, DEFAULT_WORD_BUDGET, HERMITICITY_TOL, RANK_REL_TOL};
use crate::eig::{eig_hermitian, expm_skew};
use crate::error::{Error, Result};
use crate::matrix::{commutator, hermitian_part, ComplexMatrix};
use crate::svd::{min_norm_lstsq, RectMatrix};
use crate::words::{trace_word, Letter, Word};

/// Minimal-norm least-squares solution of [K,B] = -iB over skew-adjoint K.
#[derive(Debug, Clone)]
pub struct CommutatorSolution {
    /// The witness generator; exactly skew-adjoint by construction.
    pub k: ComplexMatrix,
    /// ||[K,B] + iB||_F at the minimizer.
    pub residual: f64,
    pub exists: bool,
    pub tol_used: f64,
}

/// Unitary change of basis exhibiting the block-superdiagonal structure.
///
/// `block_sizes` lists, per direct summand, the sizes of its diagonal
/// blocks in ladder order; `off_pattern_norm` is the Frobenius mass of
/// U B U* outside the permitted superdiagonal blocks.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub u: ComplexMatrix,
    pub block_sizes: Vec<Vec<usize>>,
    pub off_pattern_norm: f64,
}

/// Orthonormal (Frobenius) basis of the real vector space of n-by-n
/// skew-adjoint matrices: i e_jj on the diagonal, then
/// (e_pq - e_qp)/sqrt(2) and i(e_pq + e_qp)/sqrt(2) for p < q.
fn skew_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut m = ComplexMatrix::zeros(n);
        m[(j, j)] = Complex64::new(0.0, 1.0);
        basis.push(m);
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for p in 0..n {
        for q in p + 1..n {
            let mut a = ComplexMatrix::zeros(n);
            a[(p, q)] = Complex64::new(r, 0.0);
            a[(q, p)] = Complex64::new(-r, 0.0);
            basis.push(a);
            let mut b = ComplexMatrix::zeros(n);
            b[(p, q)] = Complex64::new(0.0, r);
            b[(q, p)] = Complex64::new(0.0, r);
            basis.push(b);
        }
    }
    basis
}

/// Minimal-Frobenius-norm skew-adjoint K minimizing ||[K, A] - RHS||_F.
///
/// The constraint is linear in the n^2 real coordinates of K over the
/// orthonormal skew basis, so the realified system (2n^2 equations) is
/// solved by minimum-norm least squares; orthonormality of the basis makes
/// the minimum coordinate norm equal the minimum Frobenius norm.
pub(crate) fn min_norm_skew_commutator(
    a: &ComplexMatrix,
    rhs: &ComplexMatrix,
) -> Result<(ComplexMatrix, f64)> {
    let n = a.dim();
    let basis = skew_basis(n);
    let mut sys = RectMatrix::zeros(2 * n * n, n * n);
    for (col, e) in basis.iter().enumerate() {
        let c = commutator(e, a)?;
        for i in 0..n {
            for j in 0..n {
                let z = c[(i, j)];
                sys.set(2 * (i * n + j), col, Complex64::new(z.re, 0.0));
                sys.set(2 * (i * n + j) + 1, col, Complex64::new(z.im, 0.0));
            }
        }
    }
    let mut b = vec![Complex64::new(0.0, 0.0); 2 * n * n];
    for i in 0..n {
        for j in 0..n {
            let z = rhs[(i, j)];
            b[2 * (i * n + j)] = Complex64::new(z.re, 0.0);
            b[2 * (i * n + j) + 1] = Complex64::new(z.im, 0.0);
        }
    }
    let coeffs = min_norm_lstsq(&sys, &b, RANK_REL_TOL)?;
    let mut k = ComplexMatrix::zeros(n);
    for (c, e) in coeffs.iter().zip(&basis) {
        k = &k + &e.scale(Complex64::new(c.re, 0.0));
    }
    let residual = (&commutator(&k, a)? - rhs).frobenius_norm();
    Ok((k, residual))
}

/// Decide rotational symmetry: find the minimal-norm skew-adjoint K with
/// [K,B] = -iB in least squares, and report whether the residual clears
/// tol * (1 + ||B||_F).
pub fn solve_k(b: &ComplexMatrix, tol: f64) -> Result<CommutatorSolution> {
    assert!(tol > 0.0, "tolerance must be positive");
    let rhs = b.scale(Complex64::new(0.0, -1.0));
    let (k, residual) = min_norm_skew_commutator(b, &rhs)?;
    let exists = residual <= tol * (1.0 + b.frobenius_norm());
    Ok(CommutatorSolution {
        k,
        residual,
        exists,
        tol_used: tol,
    })
}

/// max over the angle grid of ||e^{-tK} B e^{tK} - e^{it} B||_F.
pub fn verify_rotation_similarity(
    b: &ComplexMatrix,
    k: &ComplexMatrix,
    samples: usize,
) -> Result<f64> {
    assert!(samples >= 1, "need at least one sample");
    let mut worst = 0.0f64;
    for j in 0..samples {
        let t = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let backward = expm_skew(k, -t)?;
        let forward = expm_skew(k, t)?;
        let conjugated = &(&backward * b) * &forward;
        let target = b.scale(Complex64::from_polar(1.0, t));
        worst = worst.max(conjugated.distance(&target));
    }
    Ok(worst)
}

/// Change of basis to the block-superdiagonal canonical form.
///
/// Diagonalizes the Hermitian matrix iK; in a basis of its eigenvectors,
/// ordered so the eigenvalues mu of -iK ascend, [K,B] = -iB forces B to map
/// each mu-eigenspace into the (mu-1)-eigenspace, so U B U* is supported on
/// the superdiagonal blocks of the cluster partition. Clusters whose means
/// differ by about 1 are chained into ladders; each connected ladder is one
/// direct summand.
pub fn block_decompose(b: &ComplexMatrix, k: &ComplexMatrix, tol: f64) -> Result<BlockDecomposition> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = b.dim();
    let deviation = k.skew_deviation();
    let kbound = HERMITICITY_TOL * (1.0 + k.frobenius_norm());
    if deviation > kbound {
        return Err(Error::NotSkewAdjoint {
            deviation,
            bound: kbound,
        });
    }
    let ik = k.scale(Complex64::new(0.0, 1.0));
    let eig = eig_hermitian(&hermitian_part(&ik, 0.0))?;
    // Descending eigenvalues of iK are ascending eigenvalues mu of -iK.
    let mu: Vec<f64> = eig.values.iter().map(|v| -v).collect();

    let mut clusters: Vec<Vec<usize>> = vec![vec![0]];
    for j in 1..n {
        let gap = (mu[j] - mu[j - 1]).max(0.0);
        if gap <= tol {
            clusters.last_mut().unwrap().push(j);
        } else if gap < 10.0 * tol {
            return Err(Error::ClusterAmbiguity {
                gap,
                tol,
                ten_tol: 10.0 * tol,
            });
        } else {
            clusters.push(vec![j]);
        }
    }
    let means: Vec<f64> = clusters
        .iter()
        .map(|c| c.iter().map(|&j| mu[j]).sum::<f64>() / c.len() as f64)
        .collect();

    // Union clusters whose means differ by about 1 into ladders.
    let nc = clusters.len();
    let mut parent: Vec<usize> = (0..nc).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for c in 0..nc {
        for d in 0..nc {
            if (means[d] - means[c] - 1.0).abs() <= CHAIN_SPACING_TOL {
                let rc = find(&mut parent, c);
                let rd = find(&mut parent, d);
                if rc != rd {
                    parent[rd] = rc;
                }
            }
        }
    }
    let mut summands: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; nc];
    for c in 0..nc {
        let r = find(&mut parent, c);
        match root_of[r] {
            Some(s) => summands[s].push(c),
            None => {
                root_of[r] = Some(summands.len());
                summands.push(vec![c]);
            }
        }
    }
    // Cluster indices ascend with mu, so each summand's clusters are already
    // in ladder order, and summands are ordered by their lowest mu.

    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut block_sizes: Vec<Vec<usize>> = Vec::with_capacity(summands.len());
    for s in &summands {
        let mut sizes = Vec::with_capacity(s.len());
        for &c in s {
            sizes.push(clusters[c].len());
            perm.extend(&clusters[c]);
        }
        block_sizes.push(sizes);
    }
    let vp = ComplexMatrix::from_fn(n, |r, c| eig.vectors[(r, perm[c])]);
    let u = vp.adjoint();
    let transformed = &(&u * b) * &vp;

    // Positions of each cluster in the permuted ordering.
    let mut allowed = vec![vec![false; n]; n];
    let mut offset = 0;
    for sizes in &block_sizes {
        let mut starts = Vec::with_capacity(sizes.len() + 1);
        let mut pos = offset;
        for &sz in sizes {
            starts.push(pos);
            pos += sz;
        }
        starts.push(pos);
        #[allow(clippy::needless_range_loop)]
        for w in 0..sizes.len().saturating_sub(1) {
            for i in starts[w]..starts[w + 1] {
                for j in starts[w + 1]..starts[w + 2] {
                    allowed[i][j] = true;
                }
            }
        }
        offset = pos;
    }
    let mut off_sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            if !allowed[i][j] {
                off_sq += transformed[(i, j)].norm_sqr();
            }
        }
    }

    Ok(BlockDecomposition {
        u,
        block_sizes,
        off_pattern_norm: off_sq.sqrt(),
    })
}

fn min_rotation(mask: u64, len: usize) -> u64 {
    let full = (1u64 << len) - 1;
    let mut best = mask;
    for r in 1..len {
        let rot = ((mask >> r) | (mask << (len - r))) & full;
        best = best.min(rot);
    }
    best
}

/// Scan every word up to max_len with unbalanced letter counts, one
/// representative per cyclic class, and report those whose |trace| exceeds
/// tol * (1 + ||B||_F^len).
pub fn bounded_word_check(
    b: &ComplexMatrix,
    max_len: usize,
    tol: f64,
) -> Result<Vec<(Word, Complex64)>> {
    assert!(max_len >= 1, "need at least length 1");
    assert!(tol > 0.0, "tolerance must be positive");
    let mut cost: u128 = 0;
    for len in 1..=max_len {
        let words = 1u128.checked_shl(len as u32).unwrap_or(u128::MAX);
        cost = cost.saturating_add(words.saturating_mul(len as u128));
    }
    if cost > DEFAULT_WORD_BUDGET {
        return Err(Error::ComplexityLimit {
            cost,
            budget: DEFAULT_WORD_BUDGET,
        });
    }
    let norm = b.frobenius_norm();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mask in 0u64..(1u64 << len) {
            let stars = mask.count_ones() as usize;
            if 2 * stars == len {
                continue;
            }
            if min_rotation(mask, len) != mask {
                continue;
            }
            let letters: Vec<Letter> = (0..len)
                .map(|i| {
                    if (mask >> i) & 1 == 1 {
                        Letter::BStar
                    } else {
                        Letter::B
                    }
                })
                .collect();
            let word = Word::new(letters);
            let trace = trace_word(b, &word);
            if trace.norm() > tol * (1.0 + norm.powi(len as i32)) {
                out.push((word, trace));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b_eq3() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ])
    }

    fn disk_counterexample() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 2.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0],
        ])
    }

    fn ladder(spacings: &[f64]) -> ComplexMatrix {
        ComplexMatrix::diagonal(
            &spacings
                .iter()
                .map(|&d| Complex64::new(0.0, d))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn jordan_block_has_ladder_witness() {
        for n in 2..=5 {
            let b = ComplexMatrix::jordan_block(n);
            let sol = solve_k(&b, 1e-8).unwrap();
            assert!(sol.exists, "n = {n}");
            assert!(sol.residual <= 1e-10, "n = {n}: {}", sol.residual);
            assert!(sol.k.skew_deviation() == 0.0);
            // The minimum-norm witness is the centered integer ladder.
            let offset = -((n as f64) - 1.0) / 2.0;
            let expect = ladder(
                &(0..n)
                    .map(|j| offset + j as f64)
                    .collect::<Vec<_>>(),
            );
            assert!(sol.k.approx_eq(&expect, 1e-8), "n = {n}");
        }
    }

    #[test]
    fn four_dim_example_has_no_witness() {
        let sol = solve_k(&b_eq3(), 1e-8).unwrap();
        assert!(!sol.exists);
        assert!((sol.residual - 0.677686696977).abs() < 1e-6);
    }

    #[test]
    fn disk_counterexample_has_no_witness() {
        let sol = solve_k(&disk_counterexample(), 1e-8).unwrap();
        assert!(!sol.exists);
        assert!((sol.residual - 0.57735026919).abs() < 1e-6);
    }

    #[test]
    fn zero_matrix_has_zero_witness() {
        let sol = solve_k(&ComplexMatrix::zeros(3), 1e-8).unwrap();
        assert!(sol.exists);
        assert_eq!(sol.residual, 0.0);
        assert_eq!(sol.k.frobenius_norm(), 0.0);
    }

    #[test]
    fn jordan_conjugation_is_exact() {
        let b = ComplexMatrix::jordan_block(4);
        let k = ladder(&[0.0, 1.0, 2.0, 3.0]);
        let dev = verify_rotation_similarity(&b, &k, 64).unwrap();
        assert!(dev <= 1e-9, "dev = {dev}");
    }

    #[test]
    fn failed_witness_leaves_large_conjugation_error() {
        let b = b_eq3();
        let sol = solve_k(&b, 1e-8).unwrap();
        let dev = verify_rotation_similarity(&b, &sol.k, 64).unwrap();
        assert!(dev > 0.5, "dev = {dev}");
    }

    #[test]
    fn zero_matrix_conjugates_trivially() {
        let k = ladder(&[1.0, 2.0]);
        let dev = verify_rotation_similarity(&ComplexMatrix::zeros(2), &k, 16).unwrap();
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn rotation_check_rejects_non_skew() {
        let b = ComplexMatrix::zeros(2);
        assert!(matches!(
            verify_rotation_similarity(&b, &ComplexMatrix::identity(2), 8),
            Err(Error::NotSkewAdjoint { .. })
        ));
    }

    #[test]
    fn jordan_decomposition_is_already_canonical() {
        let b = ComplexMatrix::jordan_block(4);
        let k = ladder(&[0.0, 1.0, 2.0, 3.0]);
        let dec = block_decompose(&b, &k, 1e-6).unwrap();
        assert_eq!(dec.block_sizes, vec![vec![1, 1, 1, 1]]);
        assert!(dec.off_pattern_norm <= 1e-10);
        let utu = &dec.u.adjoint() * &dec.u;
        assert!(utu.approx_eq(&ComplexMatrix::identity(4), 1e-10));
    }

    #[test]
    fn zero_decomposition_is_one_block() {
        let dec = block_decompose(&ComplexMatrix::zeros(3), &ComplexMatrix::zeros(3), 1e-6).unwrap();
        assert_eq!(dec.block_sizes, vec![vec![3]]);
        assert_eq!(dec.off_pattern_norm, 0.0);
    }

    fn rand_c(rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.gen_range(0.5..1.5), rng.gen_range(-1.0..1.0))
    }

    /// Blocks (2,1) on indices 0..3 and (1,1) on indices 3..5, with random
    /// entries in the superdiagonal blocks.
    fn direct_sum(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut b = ComplexMatrix::zeros(5);
        b[(0, 2)] = rand_c(rng);
        b[(1, 2)] = rand_c(rng);
        b[(3, 4)] = rand_c(rng);
        b
    }

    #[test]
    fn direct_sum_round_trip_with_constructed_ladder() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let b = direct_sum(&mut rng);
        // Ladder generator with distinct per-summand offsets, so the two
        // ladders stay separated in the spectrum of -iK.
        let k = ladder(&[1.0, 1.0, 2.0, 11.0, 12.0]);
        assert!((&commutator(&k, &b).unwrap() + &b.scale(Complex64::new(0.0, 1.0)))
            .frobenius_norm()
            < 1e-14);
        let dec = block_decompose(&b, &k, 1e-6).unwrap();
        let mut sizes = dec.block_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![vec![1, 1], vec![2, 1]]);
        assert!(
            dec.off_pattern_norm <= 1e-9,
            "off = {}",
            dec.off_pattern_norm
        );
    }

    #[test]
    fn direct_sum_with_min_norm_witness_stays_superdiagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let b = direct_sum(&mut rng);
        let sol = solve_k(&b, 1e-8).unwrap();
        assert!(sol.exists, "residual = {}", sol.residual);
        // The minimum-norm generator centers each ladder at zero and parks
        // the direction B never touches at zero, so the two ladders merge
        // into one (2,2) ladder plus a trivial summand.
        let dec = block_decompose(&b, &sol.k, 1e-6).unwrap();
        let mut sizes = dec.block_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![vec![1], vec![2, 2]]);
        assert!(
            dec.off_pattern_norm <= 1e-8 * (1.0 + b.frobenius_norm()),
            "off = {}",
            dec.off_pattern_norm
        );
    }

    #[test]
    fn ambiguous_cluster_gap_is_reported() {
        let b = ComplexMatrix::zeros(3);
        let k = ladder(&[0.0, 5e-6, 1.0]);
        assert!(matches!(
            block_decompose(&b, &k, 1e-6),
            Err(Error::ClusterAmbiguity { .. })
        ));
    }

    #[test]
    fn word_scan_flags_the_known_classes() {
        let hits = bounded_word_check(&b_eq3(), 6, 1e-9).unwrap();
        assert!(hits.iter().any(|(w, v)| {
            w.len() == 6
                && w.count(Letter::BStar) == 2
                && (v - Complex64::new(-1.0, 0.0)).norm() < 1e-10
        }));

        let hits = bounded_word_check(&disk_counterexample(), 3, 1e-9).unwrap();
        assert!(hits.iter().any(|(w, v)| {
            w.len() == 3
                && w.count(Letter::BStar) == 1
                && (v - Complex64::new(1.0, 0.0)).norm() < 1e-10
        }));
    }

    #[test]
    fn word_scan_empty_for_jordan_block() {
        let hits = bounded_word_check(&ComplexMatrix::jordan_block(4), 8, 1e-9).unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn word_scan_budget() {
        let b = ComplexMatrix::zeros(2);
        assert!(matches!(
            bounded_word_check(&b, 60, 1e-9),
            Err(Error::ComplexityLimit { .. })
        ));
    }
}
