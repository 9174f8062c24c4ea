//! Edge-described tile sets, the diagonal plaquette penalty, a backtracking
//! tiler, and red-segment analytics.
//!
//! A tile is an ordered 4-tuple of edge labels, clockwise from the topmost
//! edge. Labels 1..=12 describe an edge viewed from outside the tile; two
//! edges may abut iff the match table pairs them (default i <-> 13-i). A
//! lattice site holds the ordered pair of facing edge labels, first member
//! topmost (horizontal-edge site) or leftmost (vertical-edge site), so the
//! 12 matched pairs form the d = 12 site basis.

pub mod reference;
pub mod segments;
pub mod solver;
pub mod svg;

use crate::lattice::{pack4, unpack4, LocalTerm};
use crate::sparse::SparseOperator;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub const NUM_LABELS: usize = 12;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("edge label {0} out of range 1..=12")]
    LabelRange(u8),
    #[error("match table is not a fixed-point-free involution (label {0})")]
    BadMatchTable(u8),
    #[error("reflection involution is inconsistent with the match table (label {0})")]
    BadReflection(u8),
    #[error("tile set not closed under rotation: missing {0:?} (rotation of {1:?})")]
    RotationClosure([u8; 4], [u8; 4]),
    #[error("tile set not closed under reflection: missing {0:?} (reflection of {1:?})")]
    ReflectionClosure([u8; 4], [u8; 4]),
    #[error("tile set is missing the red corner tuple {0:?}")]
    MissingCorner([u8; 4]),
    #[error("tile set has no red arm tile for pair {0:?}")]
    MissingArmPair((u8, u8)),
    #[error("unmatched pair ({0}, {1}) is not a site basis state")]
    UnmatchedPair(u8, u8),
    #[error("malformed tile set file: {0}")]
    Malformed(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// `match_edges(a, b, table)`: 1 iff the table pairs a with b.
pub fn match_edges(a: u8, b: u8, table: &MatchTable) -> Result<u8, TilingError> {
    if a == 0 || a > 12 {
        return Err(TilingError::LabelRange(a));
    }
    if b == 0 || b > 12 {
        return Err(TilingError::LabelRange(b));
    }
    Ok(u8::from(table.partner(a) == b))
}

/// Fixed-point-free involution on labels 1..=12.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchTable {
    /// partner[i-1] is the partner of label i.
    pub partner: Vec<u8>,
}

impl MatchTable {
    /// Default pairing i <-> 13 - i.
    pub fn standard() -> Self {
        Self { partner: (1..=12u8).map(|i| 13 - i).collect() }
    }

    pub fn partner(&self, label: u8) -> u8 {
        self.partner[(label - 1) as usize]
    }

    pub fn validate(&self) -> Result<(), TilingError> {
        if self.partner.len() != NUM_LABELS {
            return Err(TilingError::Malformed(format!(
                "match table has {} entries, expected 12",
                self.partner.len()
            )));
        }
        for i in 1..=12u8 {
            let p = self.partner(i);
            if p == 0 || p > 12 {
                return Err(TilingError::LabelRange(p));
            }
            if p == i {
                return Err(TilingError::BadMatchTable(i));
            }
            if self.partner(p) != i {
                return Err(TilingError::BadMatchTable(i));
            }
        }
        Ok(())
    }
}

/// `rotate_tile`: (c1,c2,c3,c4) -> (c4,c1,c2,c3).
pub fn rotate_tile(t: [u8; 4]) -> [u8; 4] {
    [t[3], t[0], t[1], t[2]]
}

/// Reflect a tile across the vertical axis: reverse the tuple after the
/// first entry and apply the label involution.
pub fn reflect_tile(t: [u8; 4], refl: &[u8; 12]) -> [u8; 4] {
    let r = |l: u8| refl[(l - 1) as usize];
    [r(t[0]), r(t[3]), r(t[2]), r(t[1])]
}

/// The four red corner tuples: the rotation orbit of (1,6,5,2), in the
/// order top-left, top-right, bottom-right, bottom-left.
pub const RED_CORNERS: [[u8; 4]; 4] = [
    [1, 6, 5, 2],
    [2, 1, 6, 5],
    [5, 2, 1, 6],
    [6, 5, 2, 1],
];

/// Red arm (left, right) label pairs for horizontal segments; vertical
/// segments use the same pairs as (top, bottom).
pub const RED_ARM_PAIRS: [(u8, u8); 4] = [(6, 7), (7, 6), (5, 8), (8, 5)];

/// The full tile set plus its matching and reflection data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TileSet {
    pub version: String,
    pub match_table: MatchTable,
    /// Label involution used by the reflection closure (swaps the side-arrow
    /// position descriptor).
    pub reflection_involution: Vec<u8>,
    pub tiles: BTreeSet<[u8; 4]>,
    pub red_corner_tuples: Vec<[u8; 4]>,
    pub red_arm_edge_pairs: Vec<(u8, u8)>,
}

impl TileSet {
    pub fn contains(&self, t: &[u8; 4]) -> bool {
        self.tiles.contains(t)
    }

    pub fn reflection(&self) -> [u8; 12] {
        let mut r = [0u8; 12];
        r.copy_from_slice(&self.reflection_involution);
        r
    }

    /// Tiles whose (left, right) labels form one of the red arm pairs:
    /// the horizontal-segment detector set.
    pub fn horizontal_arm_tiles(&self) -> Vec<[u8; 4]> {
        self.tiles
            .iter()
            .filter(|t| self.red_arm_edge_pairs.contains(&(t[3], t[1])))
            .copied()
            .collect()
    }

    /// Tiles whose (top, bottom) labels form one of the red arm pairs.
    pub fn vertical_arm_tiles(&self) -> Vec<[u8; 4]> {
        self.tiles
            .iter()
            .filter(|t| self.red_arm_edge_pairs.contains(&(t[0], t[2])))
            .copied()
            .collect()
    }

    pub fn validate(&self) -> Result<(), TilingError> {
        self.match_table.validate()?;
        if self.reflection_involution.len() != NUM_LABELS {
            return Err(TilingError::Malformed(
                "reflection involution must have 12 entries".into(),
            ));
        }
        let refl = self.reflection();
        for i in 1..=12u8 {
            let r = refl[(i - 1) as usize];
            if r == 0 || r > 12 {
                return Err(TilingError::LabelRange(r));
            }
            if refl[(r - 1) as usize] != i {
                return Err(TilingError::BadReflection(i));
            }
            // Reflection must commute with matching.
            let lhs = refl[(self.match_table.partner(i) - 1) as usize];
            let rhs = self.match_table.partner(r);
            if lhs != rhs {
                return Err(TilingError::BadReflection(i));
            }
        }
        for &t in &self.tiles {
            for &l in &t {
                if l == 0 || l > 12 {
                    return Err(TilingError::LabelRange(l));
                }
            }
            let rot = rotate_tile(t);
            if !self.tiles.contains(&rot) {
                return Err(TilingError::RotationClosure(rot, t));
            }
            let refl_t = reflect_tile(t, &refl);
            if !self.tiles.contains(&refl_t) {
                return Err(TilingError::ReflectionClosure(refl_t, t));
            }
        }
        for corner in RED_CORNERS {
            if !self.tiles.contains(&corner) {
                return Err(TilingError::MissingCorner(corner));
            }
        }
        for pair in RED_ARM_PAIRS {
            if !self.tiles.iter().any(|t| (t[3], t[1]) == pair) {
                return Err(TilingError::MissingArmPair(pair));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        // Stable field order and tile order (BTreeSet iterates sorted).
        serde_json::to_string_pretty(self).expect("tileset serialization")
    }

    pub fn from_json(s: &str) -> Result<Self, TilingError> {
        let ts: TileSet =
            serde_json::from_str(s).map_err(|e| TilingError::Malformed(e.to_string()))?;
        ts.validate()?;
        Ok(ts)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, TilingError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Site basis state: the ordered matched pair identified by its first
/// member. State s (0-based) is the pair (s+1, partner(s+1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgePairState(pub u8);

impl EdgePairState {
    pub fn from_first(label: u8, table: &MatchTable) -> Result<Self, TilingError> {
        if label == 0 || label > 12 {
            return Err(TilingError::LabelRange(label));
        }
        let _ = table.partner(label);
        Ok(Self(label - 1))
    }

    pub fn first(&self) -> u8 {
        self.0 + 1
    }

    pub fn second(&self, table: &MatchTable) -> u8 {
        table.partner(self.0 + 1)
    }
}

/// `plaquette_penalty`: 0 iff the inner tuple of the four site states is a
/// tile of the set.
///
/// With sites (t, r, b, l) holding pairs c1..c4, the inner tuple is
/// (c1^2, c2^1, c3^1, c4^2): the members facing the plaquette's own cell.
pub fn plaquette_penalty(p: [EdgePairState; 4], ts: &TileSet) -> u8 {
    let m = &ts.match_table;
    let inner = [
        m.partner(p[0].first()),
        p[1].first(),
        p[2].first(),
        m.partner(p[3].first()),
    ];
    u8::from(!ts.contains(&inner))
}

/// Physical rotation of a plaquette of site states by pi/2.
///
/// Site contents shift cyclically (left -> top -> right -> bottom -> left);
/// states moving between a vertical and a horizontal site flip their pair
/// order, because the "topmost first / leftmost first" convention reads the
/// two facing members from opposite sides after a quarter turn.
pub fn rotate_plaquette_state(p: [EdgePairState; 4], table: &MatchTable) -> [EdgePairState; 4] {
    let flip = |s: EdgePairState| EdgePairState(table.partner(s.0 + 1) - 1);
    // New (t, r, b, l) = (old l, flip(old t), old r, flip(old b)).
    [p[3], flip(p[0]), p[1], flip(p[2])]
}

/// The same physical rotation as a unitary conjugation on plaquette terms
/// over the 12-dimensional site space.
pub fn rotate_tiling_term(t: &LocalTerm, table: &MatchTable) -> LocalTerm {
    assert_eq!(t.arity, 4);
    let d = t.site_dim;
    let perm = |idx: usize| -> usize {
        let s = unpack4(idx, d);
        let flip = |v: usize| (table.partner(v as u8 + 1) - 1) as usize;
        pack4([s[3], flip(s[0]), s[1], flip(s[2])], d)
    };
    let entries: Vec<_> = t
        .matrix
        .entries
        .iter()
        .map(|&(r, c, v)| (perm(r), perm(c), v))
        .collect();
    let matrix = SparseOperator::from_triplets(t.matrix.dim, entries).unwrap();
    LocalTerm { arity: 4, site_dim: d, matrix, tag: t.tag.clone() }
}

/// The diagonal tiling penalty h_c as a 12^4-dimensional plaquette term.
pub fn tiling_penalty_term(ts: &TileSet) -> LocalTerm {
    let d = NUM_LABELS;
    let mut trip = Vec::new();
    for idx in 0..d.pow(4) {
        let s = unpack4(idx, d);
        let p = [
            EdgePairState(s[0] as u8),
            EdgePairState(s[1] as u8),
            EdgePairState(s[2] as u8),
            EdgePairState(s[3] as u8),
        ];
        if plaquette_penalty(p, ts) == 1 {
            trip.push((idx, idx, Complex64::new(1.0, 0.0)));
        }
    }
    let matrix = SparseOperator::from_triplets(d.pow(4), trip).unwrap();
    LocalTerm { arity: 4, site_dim: d, matrix, tag: "h_c".into() }
}

/// A rectangular arrangement of tiles. Cells are stored row-major with row
/// zero at the top; defects are cells whose tuple is not in the tile set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tiling {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<[u8; 4]>,
}

impl Tiling {
    pub fn cell(&self, row: usize, col: usize) -> [u8; 4] {
        self.cells[row * self.width + col]
    }

    pub fn set_cell(&mut self, row: usize, col: usize, t: [u8; 4]) {
        self.cells[row * self.width + col] = t;
    }

    pub fn defect_positions(&self, ts: &TileSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.height {
            for c in 0..self.width {
                if !ts.contains(&self.cell(r, c)) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Check the edge-match relation on all interior shared edges.
    pub fn edges_consistent(&self, table: &MatchTable) -> bool {
        for r in 0..self.height {
            for c in 0..self.width {
                let t = self.cell(r, c);
                if c + 1 < self.width && self.cell(r, c + 1)[3] != table.partner(t[1]) {
                    return false;
                }
                if r + 1 < self.height && self.cell(r + 1, c)[0] != table.partner(t[2]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tiling serialization")
    }
}
