//! Sparse Hermitian operators stored as canonical triplet lists.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SparseError {
    #[error("index ({0}, {1}) out of bounds for dimension {2}")]
    IndexOutOfBounds(usize, usize, usize),
    #[error("operator is not Hermitian: |H - H^dag| max deviation {0:.3e}")]
    NotHermitian(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Hermitian operator as a duplicate-free, sorted triplet list.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    pub dim: usize,
    /// Sorted by (row, col); at most one entry per position.
    pub entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    /// Build from raw triplets: duplicates are summed, zeros dropped,
    /// result sorted by (row, col).
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self, SparseError> {
        let mut entries: Vec<(usize, usize, Complex64)> = triplets.into_iter().collect();
        for &(r, c, _) in &entries {
            if r >= dim || c >= dim {
                return Err(SparseError::IndexOutOfBounds(r, c, dim));
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut canon: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match canon.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => canon.push((r, c, v)),
            }
        }
        canon.retain(|&(_, _, v)| v.norm() > 0.0);
        Ok(Self { dim, entries: canon })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            entries: (0..dim).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Max |H[i,j] - conj(H[j,i])| over all stored positions.
    pub fn hermiticity_defect(&self) -> f64 {
        use std::collections::HashMap;
        let map: HashMap<(usize, usize), Complex64> =
            self.entries.iter().map(|&(r, c, v)| ((r, c), v)).collect();
        let mut worst = 0.0f64;
        for &(r, c, v) in &self.entries {
            let vt = map.get(&(c, r)).copied().unwrap_or(Complex64::new(0.0, 0.0));
            worst = worst.max((v - vt.conj()).norm());
        }
        worst
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<(), SparseError> {
        let d = self.hermiticity_defect();
        if d > tol {
            return Err(SparseError::NotHermitian(d));
        }
        Ok(())
    }

    /// y = A x
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&(r, c, v)| (r, c, v * s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SparseError> {
        if self.dim != other.dim {
            return Err(SparseError::DimensionMismatch(self.dim, other.dim));
        }
        Self::from_triplets(self.dim, self.entries.iter().chain(other.entries.iter()).copied())
    }

    /// A + c * I
    pub fn add_scalar(&self, c: Complex64) -> Self {
        let shift = (0..self.dim).map(|i| (i, i, c));
        Self::from_triplets(self.dim, self.entries.iter().copied().chain(shift)).unwrap()
    }

    /// Dense matrix product A * B (used for small commutator checks).
    pub fn matmul(&self, other: &Self) -> Result<Self, SparseError> {
        if self.dim != other.dim {
            return Err(SparseError::DimensionMismatch(self.dim, other.dim));
        }
        // Group B by row for lookup.
        let mut b_rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); other.dim];
        for &(r, c, v) in &other.entries {
            b_rows[r].push((c, v));
        }
        let mut triplets = Vec::new();
        for &(r, k, va) in &self.entries {
            for &(c, vb) in &b_rows[k] {
                triplets.push((r, c, va * vb));
            }
        }
        Self::from_triplets(self.dim, triplets)
    }

    /// Max |entry| of A - B.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        use std::collections::HashMap;
        let mut map: HashMap<(usize, usize), Complex64> =
            self.entries.iter().map(|&(r, c, v)| ((r, c), v)).collect();
        let mut worst = 0.0f64;
        for &(r, c, v) in &other.entries {
            let d = map.remove(&(r, c)).unwrap_or(Complex64::new(0.0, 0.0)) - v;
            worst = worst.max(d.norm());
        }
        for (_, v) in map {
            worst = worst.max(v.norm());
        }
        worst
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|&(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    /// CSV export, one line per entry: `row,col,re,im`.
    pub fn to_triplet_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for &(r, c, v) in &self.entries {
            out.push_str(&format!("{},{},{:.12e},{:.12e}\n", r, c, v.re, v.im));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonicalization_merges_duplicates() {
        let op = SparseOperator::from_triplets(
            2,
            vec![(0, 1, c(1.0, 0.0)), (0, 1, c(2.0, 0.0)), (1, 0, c(3.0, 0.0))],
        )
        .unwrap();
        assert_eq!(op.nnz(), 2);
        assert_eq!(op.entries[0], (0, 1, c(3.0, 0.0)));
    }

    #[test]
    fn hermiticity_detects_defect() {
        let op =
            SparseOperator::from_triplets(2, vec![(0, 1, c(1.0, 0.0)), (1, 0, c(0.5, 0.0))]) // not herm
                .unwrap();
        assert!(op.check_hermitian(1e-12).is_err());
        let ok =
            SparseOperator::from_triplets(2, vec![(0, 1, c(0.0, 1.0)), (1, 0, c(0.0, -1.0))])
                .unwrap();
        assert!(ok.check_hermitian(1e-12).is_ok());
    }

    #[test]
    fn out_of_bounds_rejected() {
        assert!(SparseOperator::from_triplets(2, vec![(2, 0, c(1.0, 0.0))]).is_err());
    }
}
