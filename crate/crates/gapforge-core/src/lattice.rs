//! Lattice geometry with sites on edge midpoints, plaquette bookkeeping,
//! symmetry transforms of local terms, and Hamiltonian assembly.
//!
//! Site indexing is fixed: bands top to bottom, each cell row contributing
//! its horizontal-edge sites before its vertical-edge sites, row-major
//! within a band. This makes every export byte-reproducible.

use crate::sparse::{SparseError, SparseOperator};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("lattice dimensions must be positive, got {0}x{1}")]
    EmptyLattice(usize, usize),
    #[error("term has arity {0}, expected {1}")]
    WrongArity(usize, usize),
    #[error("term matrix is {0}x{0}, expected {1}x{1} for site dimension {2}")]
    WrongDimension(usize, usize, usize),
    #[error("term not Hermitian within 1e-12 (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("subspace is empty")]
    EmptySubspace,
    #[error("subspace state has {0} sites, lattice has {1}")]
    SubspaceSiteCount(usize, usize),
    #[error("subspace state value {0} exceeds site dimension {1}")]
    SubspaceValue(usize, usize),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

/// Position of a site: midpoint of a horizontal or vertical unit-cell edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SitePos {
    /// x of the midpoint, in half-cell units (so it stays integral).
    pub x2: i64,
    /// y of the midpoint, in half-cell units; y grows downward from the top row.
    pub y2: i64,
    pub horizontal: bool,
}

/// L x H lattice of unit cells with sites on edge midpoints.
///
/// |sites| = L(H+1) + H(L+1); plaquettes are (top, right, bottom, left),
/// clockwise from the top edge.
#[derive(Debug, Clone, Serialize)]
pub struct Lattice {
    pub width: usize,
    pub height: usize,
    pub sites: Vec<SitePos>,
    pub plaquettes: Vec<[usize; 4]>,
}

/// `build_lattice(L, H)`
pub fn build_lattice(width: usize, height: usize) -> Result<Lattice, LatticeError> {
    if width == 0 || height == 0 {
        return Err(LatticeError::EmptyLattice(width, height));
    }
    let (l, h) = (width, height);
    let mut sites = Vec::with_capacity(l * (h + 1) + h * (l + 1));
    // Band r (r = 0..h-1): horizontal sites above cell row r, then vertical
    // sites of cell row r. A final band holds the bottom horizontal edges.
    let mut h_index = vec![vec![0usize; l]; h + 1];
    let mut v_index = vec![vec![0usize; l + 1]; h];
    for r in 0..h {
        for c in 0..l {
            h_index[r][c] = sites.len();
            sites.push(SitePos { x2: 2 * c as i64 + 1, y2: 2 * r as i64, horizontal: true });
        }
        for c in 0..=l {
            v_index[r][c] = sites.len();
            sites.push(SitePos { x2: 2 * c as i64, y2: 2 * r as i64 + 1, horizontal: false });
        }
    }
    for c in 0..l {
        h_index[h][c] = sites.len();
        sites.push(SitePos { x2: 2 * c as i64 + 1, y2: 2 * h as i64, horizontal: true });
    }
    let mut plaquettes = Vec::with_capacity(l * h);
    for r in 0..h {
        for c in 0..l {
            plaquettes.push([h_index[r][c], v_index[r][c + 1], h_index[r + 1][c], v_index[r][c]]);
        }
    }
    Ok(Lattice { width, height, sites, plaquettes })
}

impl Lattice {
    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    /// Number of plaquettes each site belongs to.
    pub fn site_plaquette_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.sites.len()];
        for p in &self.plaquettes {
            for &s in p {
                deg[s] += 1;
            }
        }
        deg
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice serialization")
    }
}

/// A one-site or plaquette Hermitian term, stored sparsely.
#[derive(Debug, Clone)]
pub struct LocalTerm {
    pub arity: usize,
    pub site_dim: usize,
    /// Matrix on the arity-fold tensor space, dimension site_dim^arity.
    pub matrix: SparseOperator,
    pub tag: String,
}

impl LocalTerm {
    pub fn new(
        arity: usize,
        site_dim: usize,
        matrix: SparseOperator,
        tag: impl Into<String>,
    ) -> Result<Self, LatticeError> {
        let expect = site_dim.pow(arity as u32);
        if matrix.dim != expect {
            return Err(LatticeError::WrongDimension(matrix.dim, expect, site_dim));
        }
        let defect = matrix.hermiticity_defect();
        if defect > 1e-12 {
            return Err(LatticeError::NotHermitian(defect));
        }
        Ok(Self { arity, site_dim, matrix, tag: tag.into() })
    }

    pub fn from_dense(
        arity: usize,
        site_dim: usize,
        dense: &nalgebra::DMatrix<Complex64>,
        tag: impl Into<String>,
    ) -> Result<Self, LatticeError> {
        let mut trip = Vec::new();
        for r in 0..dense.nrows() {
            for c in 0..dense.ncols() {
                let v = dense[(r, c)];
                if v.norm() > 0.0 {
                    trip.push((r, c, v));
                }
            }
        }
        let m = SparseOperator::from_triplets(dense.nrows(), trip)?;
        Self::new(arity, site_dim, m, tag)
    }

    pub fn zero(arity: usize, site_dim: usize, tag: impl Into<String>) -> Self {
        Self {
            arity,
            site_dim,
            matrix: SparseOperator::zero(site_dim.pow(arity as u32)),
            tag: tag.into(),
        }
    }
}

/// Unpack a plaquette basis index into the four site states (t, r, b, l).
#[inline]
pub fn unpack4(idx: usize, d: usize) -> [usize; 4] {
    let z = idx % d;
    let w = (idx / d) % d;
    let y = (idx / (d * d)) % d;
    let x = idx / (d * d * d);
    [x, y, w, z]
}

/// Pack four site states (t, r, b, l) into a plaquette basis index.
#[inline]
pub fn pack4(s: [usize; 4], d: usize) -> usize {
    ((s[0] * d + s[1]) * d + s[2]) * d + s[3]
}

/// `rotate_plaquette_term`: conjugation by U with U|x,y,w,z> = |z,x,y,w>.
///
/// Implemented as an exact index permutation, so four applications return
/// the original term bit for bit.
pub fn rotate_plaquette_term(t: &LocalTerm) -> Result<LocalTerm, LatticeError> {
    if t.arity != 4 {
        return Err(LatticeError::WrongArity(t.arity, 4));
    }
    let d = t.site_dim;
    let perm = |idx: usize| -> usize {
        let [x, y, w, z] = unpack4(idx, d);
        pack4([z, x, y, w], d)
    };
    let entries = t
        .matrix
        .entries
        .iter()
        .map(|&(r, c, v)| (perm(r), perm(c), v))
        .collect::<Vec<_>>();
    let matrix = SparseOperator::from_triplets(t.matrix.dim, entries)?;
    Ok(LocalTerm { arity: 4, site_dim: d, matrix, tag: t.tag.clone() })
}

/// `check_rotational_invariance`: max-entry norm of t - rotate(t) vs tol.
pub fn check_rotational_invariance(t: &LocalTerm, tol: f64) -> Result<bool, LatticeError> {
    let rotated = rotate_plaquette_term(t)?;
    Ok(t.matrix.max_abs_diff(&rotated.matrix) <= tol)
}

/// `reflect_pair_term`: conjugation of a two-site term by the swap
/// U_R|x>|y> = |y>|x>. An involution.
pub fn reflect_pair_term(t: &LocalTerm) -> Result<LocalTerm, LatticeError> {
    if t.arity != 2 {
        return Err(LatticeError::WrongArity(t.arity, 2));
    }
    let d = t.site_dim;
    let perm = |idx: usize| -> usize {
        let (x, y) = (idx / d, idx % d);
        y * d + x
    };
    let entries = t
        .matrix
        .entries
        .iter()
        .map(|&(r, c, v)| (perm(r), perm(c), v))
        .collect::<Vec<_>>();
    let matrix = SparseOperator::from_triplets(t.matrix.dim, entries)?;
    Ok(LocalTerm { arity: 2, site_dim: d, matrix, tag: t.tag.clone() })
}

/// A product basis state over all lattice sites.
pub type BasisState = Vec<u16>;

/// `assemble_hamiltonian`: sum of the one-site term over all sites plus the
/// plaquette term over all plaquettes.
///
/// Without `subspace` the full d^n matrix is built (only sensible for tiny
/// lattices). With `subspace` the restriction P H P is returned, indexed by
/// the given product states; exact whenever the span is H-invariant, and a
/// variational upper-bound tool otherwise.
pub fn assemble_hamiltonian(
    lat: &Lattice,
    one_site: Option<&LocalTerm>,
    plaquette: Option<&LocalTerm>,
    subspace: Option<&[BasisState]>,
) -> Result<SparseOperator, LatticeError> {
    let site_dim = one_site
        .map(|t| t.site_dim)
        .or_else(|| plaquette.map(|t| t.site_dim))
        .unwrap_or(1);
    if let Some(t) = one_site {
        if t.arity != 1 {
            return Err(LatticeError::WrongArity(t.arity, 1));
        }
        if t.site_dim != site_dim {
            return Err(LatticeError::WrongDimension(t.site_dim, site_dim, site_dim));
        }
    }
    if let Some(t) = plaquette {
        if t.arity != 4 {
            return Err(LatticeError::WrongArity(t.arity, 4));
        }
        if t.site_dim != site_dim {
            return Err(LatticeError::WrongDimension(t.site_dim, site_dim, site_dim));
        }
    }
    match subspace {
        Some(states) => {
            if states.is_empty() {
                return Err(LatticeError::EmptySubspace);
            }
            for s in states {
                if s.len() != lat.site_count() {
                    return Err(LatticeError::SubspaceSiteCount(s.len(), lat.site_count()));
                }
                if let Some(&v) = s.iter().find(|&&v| v as usize >= site_dim) {
                    return Err(LatticeError::SubspaceValue(v as usize, site_dim));
                }
            }
            assemble_restricted(lat, one_site, plaquette, states, site_dim)
        }
        None => assemble_full(lat, one_site, plaquette, site_dim),
    }
}

fn assemble_full(
    lat: &Lattice,
    one_site: Option<&LocalTerm>,
    plaquette: Option<&LocalTerm>,
    d: usize,
) -> Result<SparseOperator, LatticeError> {
    let n = lat.site_count();
    let dim = d.checked_pow(n as u32).expect("full space too large");
    // Enumerate all product states and apply terms; fine only for tiny cases.
    let mut trip = Vec::new();
    let idx_of = |state: &[usize]| -> usize { state.iter().fold(0, |acc, &s| acc * d + s) };
    let mut state = vec![0usize; n];
    for col in 0..dim {
        // decode col
        let mut rem = col;
        for i in (0..n).rev() {
            state[i] = rem % d;
            rem /= d;
        }
        if let Some(t) = one_site {
            for site in 0..n {
                for &(r, c, v) in &t.matrix.entries {
                    if c == state[site] {
                        let mut target = state.clone();
                        target[site] = r;
                        trip.push((idx_of(&target), col, v));
                    }
                }
            }
        }
        if let Some(t) = plaquette {
            for p in &lat.plaquettes {
                let local = pack4(
                    [state[p[0]], state[p[1]], state[p[2]], state[p[3]]],
                    d,
                );
                for &(r, c, v) in &t.matrix.entries {
                    if c == local {
                        let loc = unpack4(r, d);
                        let mut target = state.clone();
                        for (k, &site) in p.iter().enumerate() {
                            target[site] = loc[k];
                        }
                        trip.push((idx_of(&target), col, v));
                    }
                }
            }
        }
    }
    Ok(SparseOperator::from_triplets(dim, trip)?)
}

fn assemble_restricted(
    lat: &Lattice,
    one_site: Option<&LocalTerm>,
    plaquette: Option<&LocalTerm>,
    states: &[BasisState],
    d: usize,
) -> Result<SparseOperator, LatticeError> {
    let index: HashMap<&BasisState, usize> =
        states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut trip: Vec<(usize, usize, Complex64)> = Vec::new();
    // Group plaquette entries by source local configuration.
    let mut plaq_by_col: HashMap<usize, Vec<(usize, Complex64)>> = HashMap::new();
    if let Some(t) = plaquette {
        for &(r, c, v) in &t.matrix.entries {
            plaq_by_col.entry(c).or_default().push((r, v));
        }
    }
    let mut site_by_col: HashMap<usize, Vec<(usize, Complex64)>> = HashMap::new();
    if let Some(t) = one_site {
        for &(r, c, v) in &t.matrix.entries {
            site_by_col.entry(c).or_default().push((r, v));
        }
    }
    for (col, state) in states.iter().enumerate() {
        if !site_by_col.is_empty() {
            for site in 0..state.len() {
                if let Some(rows) = site_by_col.get(&(state[site] as usize)) {
                    for &(r, v) in rows {
                        let mut target = state.clone();
                        target[site] = r as u16;
                        if let Some(&row) = index.get(&target) {
                            trip.push((row, col, v));
                        }
                    }
                }
            }
        }
        if !plaq_by_col.is_empty() {
            for p in &lat.plaquettes {
                let local = pack4(
                    [
                        state[p[0]] as usize,
                        state[p[1]] as usize,
                        state[p[2]] as usize,
                        state[p[3]] as usize,
                    ],
                    d,
                );
                if let Some(rows) = plaq_by_col.get(&local) {
                    for &(r, v) in rows {
                        let loc = unpack4(r, d);
                        let mut target = state.clone();
                        for (k, &site) in p.iter().enumerate() {
                            target[site] = loc[k] as u16;
                        }
                        if let Some(&row) = index.get(&target) {
                            trip.push((row, col, v));
                        }
                    }
                }
            }
        }
    }
    Ok(SparseOperator::from_triplets(states.len(), trip)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn site_and_plaquette_counts() {
        // (1,1) -> 4 sites, 1 plaquette; (2,2) -> 12, 4; (2,1) -> 7, 2.
        for &(l, h, sites, plaqs) in &[(1usize, 1usize, 4usize, 1usize), (2, 2, 12, 4), (2, 1, 7, 2)] {
            let lat = build_lattice(l, h).unwrap();
            assert_eq!(lat.site_count(), sites);
            assert_eq!(lat.plaquettes.len(), plaqs);
            assert_eq!(lat.site_count(), l * (h + 1) + h * (l + 1));
        }
        assert!(build_lattice(0, 3).is_err());
    }

    #[test]
    fn counting_formula_exhaustive_up_to_12() {
        for l in 1..=12 {
            for h in 1..=12 {
                let lat = build_lattice(l, h).unwrap();
                assert_eq!(lat.site_count(), l * (h + 1) + h * (l + 1));
                assert_eq!(lat.plaquettes.len(), l * h);
            }
        }
    }

    #[test]
    fn interior_sites_touch_two_plaquettes() {
        let lat = build_lattice(4, 3).unwrap();
        let deg = lat.site_plaquette_degrees();
        for (i, s) in lat.sites.iter().enumerate() {
            let boundary = if s.horizontal {
                s.y2 == 0 || s.y2 == 2 * lat.height as i64
            } else {
                s.x2 == 0 || s.x2 == 2 * lat.width as i64
            };
            assert_eq!(deg[i], if boundary { 1 } else { 2 }, "site {i}");
        }
    }

    #[test]
    fn plaquette_order_is_clockwise_from_top() {
        let lat = build_lattice(2, 2).unwrap();
        let p = lat.plaquettes[0];
        let [t, r, b, l] = p;
        assert!(lat.sites[t].horizontal && lat.sites[t].y2 == 0);
        assert!(!lat.sites[r].horizontal && lat.sites[r].x2 == 2);
        assert!(lat.sites[b].horizontal && lat.sites[b].y2 == 2);
        assert!(!lat.sites[l].horizontal && lat.sites[l].x2 == 0);
    }

    #[test]
    fn rotation_is_exact_permutation_of_order_four() {
        let d = 3;
        // Pseudo-random Hermitian plaquette term.
        let n = d * d * d * d;
        let mut trip = Vec::new();
        let mut s = 99u64;
        let mut nextf = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..n {
            trip.push((i, i, cx(nextf())));
        }
        for k in 0..200 {
            let i = (k * 131) % n;
            let j = (k * 17 + 5) % n;
            if i != j {
                let v = Complex64::new(nextf(), nextf());
                trip.push((i, j, v));
                trip.push((j, i, v.conj()));
            }
        }
        let m = SparseOperator::from_triplets(n, trip).unwrap();
        let t = LocalTerm::new(4, d, m, "rand").unwrap();
        let mut r = t.clone();
        for _ in 0..4 {
            r = rotate_plaquette_term(&r).unwrap();
        }
        assert_eq!(r.matrix.max_abs_diff(&t.matrix), 0.0);
    }

    #[test]
    fn rotation_moves_projector() {
        // |abcd><abcd| -> |dabc><dabc|
        let d = 4;
        let (a, b, c0, e) = (0usize, 1, 2, 3);
        let idx = pack4([a, b, c0, e], d);
        let m = SparseOperator::from_triplets(d * d * d * d, vec![(idx, idx, cx(1.0))]).unwrap();
        let t = LocalTerm::new(4, d, m, "proj").unwrap();
        let r = rotate_plaquette_term(&t).unwrap();
        let want = pack4([e, a, b, c0], d);
        assert_eq!(r.matrix.entries, vec![(want, want, cx(1.0))]);
        // A projector onto distinct labels is not rotation invariant.
        assert!(!check_rotational_invariance(&t, 1e-12).unwrap());
    }

    #[test]
    fn identity_term_is_rotation_invariant() {
        let d = 3;
        let t = LocalTerm::new(4, d, SparseOperator::identity(d * d * d * d), "id").unwrap();
        assert!(check_rotational_invariance(&t, 1e-12).unwrap());
    }

    #[test]
    fn reflect_is_involution_and_swaps() {
        let d = 3;
        // |ab><cd| + h.c. -> |ba><dc| + h.c.
        let (a, b, c0, e) = (0usize, 1, 2, 1);
        let m = SparseOperator::from_triplets(
            d * d,
            vec![(a * d + b, c0 * d + e, cx(1.0)), (c0 * d + e, a * d + b, cx(1.0))],
        )
        .unwrap();
        let t = LocalTerm::new(2, d, m, "hop").unwrap();
        let r = reflect_pair_term(&t).unwrap();
        assert!(r
            .matrix
            .entries
            .iter()
            .any(|&(rr, cc, _)| rr == b * d + a && cc == e * d + c0));
        let rr = reflect_pair_term(&r).unwrap();
        assert_eq!(rr.matrix.max_abs_diff(&t.matrix), 0.0);
    }

    #[test]
    fn assemble_constant_one_site_term() {
        // c * identity per site on (1,1) gives 4c * identity.
        let lat = build_lattice(1, 1).unwrap();
        let d = 2;
        let t = LocalTerm::new(1, d, SparseOperator::identity(d).scale(cx(0.5)), "c").unwrap();
        let h = assemble_hamiltonian(&lat, Some(&t), None, None).unwrap();
        let dense = h.to_dense();
        for i in 0..dense.nrows() {
            assert!((dense[(i, i)] - cx(2.0)).norm() < 1e-14);
        }
        assert_eq!(h.nnz(), 16);
    }

    #[test]
    fn assemble_zero_terms_zero_matrix() {
        let lat = build_lattice(1, 1).unwrap();
        let d = 2;
        let t = LocalTerm::zero(4, d, "z");
        let h = assemble_hamiltonian(&lat, None, Some(&t), None).unwrap();
        assert_eq!(h.dim, d * d * d * d);
        assert_eq!(h.nnz(), 0);
    }

    #[test]
    fn restriction_matches_full_on_invariant_subspace() {
        // Diagonal plaquette term: subspace of all basis states is invariant;
        // compare a random diagonal entry.
        let lat = build_lattice(1, 1).unwrap();
        let d = 2;
        let n = 16;
        let m = SparseOperator::from_triplets(
            n,
            (0..n).map(|i| (i, i, cx(i as f64))).collect::<Vec<_>>(),
        )
        .unwrap();
        let t = LocalTerm::new(4, d, m, "diag").unwrap();
        let full = assemble_hamiltonian(&lat, None, Some(&t), None).unwrap();
        let states: Vec<BasisState> = (0..16)
            .map(|i| (0..4).rev().map(|k| ((i >> k) & 1) as u16).collect())
            .collect();
        let restr = assemble_hamiltonian(&lat, None, Some(&t), Some(&states)).unwrap();
        assert_eq!(full.to_dense(), restr.to_dense());
    }

    #[test]
    fn empty_subspace_rejected() {
        let lat = build_lattice(1, 1).unwrap();
        let t = LocalTerm::zero(4, 2, "z");
        let states: Vec<BasisState> = vec![];
        assert!(matches!(
            assemble_hamiltonian(&lat, None, Some(&t), Some(&states)),
            Err(LatticeError::EmptySubspace)
        ));
    }
}
