//! Low-spectrum solvers: dense Hermitian diagonalization below a size
//! threshold, Lanczos with full reorthogonalization above it.

use crate::sparse::SparseOperator;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Dimension below which we diagonalize densely.
pub const DENSE_THRESHOLD: usize = 2048;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("need at least {0} eigenvalues, spectrum has {1}")]
    NotEnoughValues(usize, usize),
    #[error("operator not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("Lanczos did not converge: residual norm {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("empty operator")]
    Empty,
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn dense_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Eigenvalues (ascending) and matching eigenvectors of a Hermitian matrix.
pub fn dense_eigenpairs(m: &DMatrix<Complex64>) -> (Vec<f64>, Vec<DVector<Complex64>>) {
    let eig = m.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = idx
        .iter()
        .map(|&i| DVector::from_column_slice(eig.eigenvectors.column(i).as_slice()))
        .collect();
    (vals, vecs)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    dot(a, a).re.sqrt()
}

/// Deterministic pseudo-random start vector (splitmix64 stream).
fn seeded_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    (0..n)
        .map(|_| {
            let re = (next() as f64 / u64::MAX as f64) - 0.5;
            let im = (next() as f64 / u64::MAX as f64) - 0.5;
            Complex64::new(re, im)
        })
        .collect()
}

/// Lanczos with full reorthogonalization; returns the k smallest Ritz values.
///
/// Residuals of the returned Ritz pairs are checked against `tol`.
pub fn lanczos_lowest(
    op: &SparseOperator,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<f64>, EigenError> {
    let n = op.dim;
    if n == 0 {
        return Err(EigenError::Empty);
    }
    let m = n.min((6 * k + 80).max(160));

    let mut v = seeded_vector(n, seed);
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);

    let mut alpha: Vec<f64> = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    let mut vecs: Vec<Vec<Complex64>> = vec![v.clone()];
    let mut w = vec![Complex64::new(0.0, 0.0); n];

    for j in 0..m {
        op.matvec(&v, &mut w);
        let a_j = dot(&v, &w).re;
        alpha.push(a_j);
        // w -= a_j v + b_{j-1} v_{j-1}, then full reorthogonalization.
        for prev in &vecs {
            let proj = dot(prev, &w);
            for i in 0..n {
                w[i] -= proj * prev[i];
            }
        }
        // Second Gram-Schmidt pass for stability.
        for prev in &vecs {
            let proj = dot(prev, &w);
            for i in 0..n {
                w[i] -= proj * prev[i];
            }
        }
        let b_next = norm(&w);
        if b_next < 1e-13 || j + 1 == m {
            beta.push(0.0);
            break;
        }
        beta.push(b_next);
        for i in 0..n {
            v[i] = w[i] / b_next;
        }
        vecs.push(v.clone());
    }

    // Diagonalize the real symmetric tridiagonal via dense (it is small).
    let t = alpha.len();
    let mut tri = DMatrix::<Complex64>::zeros(t, t);
    for i in 0..t {
        tri[(i, i)] = Complex64::new(alpha[i], 0.0);
        if i + 1 < t && beta[i] != 0.0 {
            tri[(i, i + 1)] = Complex64::new(beta[i], 0.0);
            tri[(i + 1, i)] = Complex64::new(beta[i], 0.0);
        }
    }
    let (vals, tvecs) = dense_eigenpairs(&tri);
    if vals.len() < k {
        return Err(EigenError::NotEnoughValues(k, vals.len()));
    }

    // Residual check on the k lowest Ritz pairs.
    let mut worst_residual = 0.0f64;
    for ritz_idx in 0..k {
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (j, basis) in vecs.iter().enumerate().take(t) {
            let coeff = tvecs[ritz_idx][j];
            for i in 0..n {
                x[i] += coeff * basis[i];
            }
        }
        let nx = norm(&x);
        if nx < 1e-12 {
            continue;
        }
        x.iter_mut().for_each(|c| *c /= nx);
        let mut ax = vec![Complex64::new(0.0, 0.0); n];
        op.matvec(&x, &mut ax);
        let lam = vals[ritz_idx];
        let mut res = 0.0f64;
        for i in 0..n {
            res += (ax[i] - lam * x[i]).norm_sqr();
        }
        worst_residual = worst_residual.max(res.sqrt());
    }
    if worst_residual > tol.max(1e-9) {
        return Err(EigenError::NoConvergence {
            residual: worst_residual,
            iterations: t,
        });
    }
    Ok(vals.into_iter().take(k).collect())
}

/// k smallest eigenvalues of a Hermitian sparse operator, ascending.
///
/// Dense solve below [`DENSE_THRESHOLD`], Lanczos with reorthogonalization
/// above it.
pub fn low_spectrum(op: &SparseOperator, k: usize, tol: f64) -> Result<Vec<f64>, EigenError> {
    op.check_hermitian(1e-10)
        .map_err(|_| EigenError::NotHermitian(op.hermiticity_defect()))?;
    if op.dim == 0 {
        return Err(EigenError::Empty);
    }
    let k = k.min(op.dim);
    if op.dim < DENSE_THRESHOLD {
        let vals = dense_eigenvalues(&op.to_dense());
        Ok(vals.into_iter().take(k).collect())
    } else {
        lanczos_lowest(op, k, tol, 0x5eed)
    }
}

/// λ1 − λ0 of an ascending eigenvalue list.
pub fn spectral_gap(spec: &[f64]) -> Result<f64, EigenError> {
    if spec.len() < 2 {
        return Err(EigenError::NotEnoughValues(2, spec.len()));
    }
    Ok(spec[1] - spec[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_low_spectrum() {
        let op = SparseOperator::from_triplets(
            3,
            vec![(0, 0, c(0.0, 0.0)), (1, 1, c(1.0, 0.0)), (2, 2, c(2.0, 0.0))],
        )
        .unwrap();
        let vals = low_spectrum(&op, 2, 1e-9).unwrap();
        assert!((vals[0] - 0.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let op = SparseOperator::from_triplets(
            2,
            vec![
                (0, 0, c(1.0, 0.0)),
                (1, 1, c(1.0, 0.0)),
                (0, 1, c(0.0, 1.0)),
                (1, 0, c(0.0, -1.0)),
            ],
        )
        .unwrap();
        let vals = low_spectrum(&op, 2, 1e-9).unwrap();
        assert!((vals[0] - 0.0).abs() < 1e-10, "{vals:?}");
        assert!((vals[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn gap_of_degenerate_ground_space_is_zero() {
        assert_eq!(spectral_gap(&[0.0, 0.0, 3.0]).unwrap(), 0.0);
        assert_eq!(spectral_gap(&[0.0, 1.0]).unwrap(), 1.0);
        assert!(spectral_gap(&[0.0]).is_err());
    }

    #[test]
    fn lanczos_matches_dense() {
        // Deterministic pseudo-random Hermitian matrix, dimension 60.
        let n = 60;
        let mut trip = Vec::new();
        let mut s = 12345u64;
        let mut nextf = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..n {
            trip.push((i, i, c(nextf(), 0.0)));
            for j in (i + 1)..n {
                if (i * 7 + j * 13) % 17 == 0 {
                    let v = c(nextf(), nextf());
                    trip.push((i, j, v));
                    trip.push((j, i, v.conj()));
                }
            }
        }
        let op = SparseOperator::from_triplets(n, trip).unwrap();
        let dense = dense_eigenvalues(&op.to_dense());
        let lz = lanczos_lowest(&op, 3, 1e-9, 7).unwrap();
        for i in 0..3 {
            assert!((dense[i] - lz[i]).abs() < 1e-9, "{} vs {}", dense[i], lz[i]);
        }
    }
}
