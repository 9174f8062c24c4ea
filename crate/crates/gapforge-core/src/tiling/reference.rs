//! Reference hierarchical tiling and the bundled tile set generator.
//!
//! The generator realizes the nested-squares structure directly in 2-adic
//! coordinates and reads off edge labels. Cells sit at integer positions
//! (x, y), y growing north, axes excluded. Writing v2 for the dyadic
//! valuation, a cell with v2(x) = v2(y) = k is a cross of order k; it is the
//! corner of exactly one square of side 2^(k+1), centered on the adjacent
//! order-(k+1) cross. Squares of side 2^k are outlined through the cells at
//! Chebyshev distance 2^(k-1) from their center; sides of even k are red,
//! odd k green.
//!
//! Every edge carries exactly one arrow crossing. On the row through a
//! horizontal edge's cells (valuation b, level k = b+1), each edge belongs
//! to the unique level-k column within half-spacing. Inside the square-side
//! span the arrows are solid (red/green by level parity) and converge from
//! the two corners toward the side midpoint; outside the span they are the
//! dashed continuation and diverge away from the square until the skirts of
//! neighboring squares meet at a higher-order column. The dashed web is
//! what ties neighboring squares' positions together. Labels:
//!
//! * red (t,L)=5 (t,R)=6 (h,L)=7 (h,R)=8, green (t,L)=3 (t,R)=4 (h,L)=9
//!   (h,R)=10, dashed (t,L)=1 (t,R)=2 (h,L)=11 (h,R)=12, where o = t/h is
//!   the half of the crossing arrow on the west side and p = L/R is the
//!   side-arrow offset seen from outside;
//! * matching pairs i with 13-i (flips o and p, keeps style);
//! * solid offsets sit on the top/right of their line, dashed on the
//!   opposite side.
//!
//! The pinned corner tuples (1,6,5,2), (2,1,6,5), (5,2,1,6), (6,5,2,1) and
//! the arm pairs (6,7),(7,6),(5,8),(8,5) emerge from this arithmetic.

use super::{reflect_tile, rotate_tile, MatchTable, TileSet, Tiling};
use std::collections::BTreeSet;

/// Dyadic valuation; t must be nonzero.
fn v2(t: i64) -> u32 {
    debug_assert!(t != 0);
    t.trailing_zeros()
}

/// Label on the east edge of cell (x, y): the descriptor contributed by
/// this cell (the site's first member). y must be nonzero.
pub fn east_label(x: i64, y: i64) -> u8 {
    let b = v2(y);
    let k = b + 1;
    // Work in half-units so the edge position x + 1/2 stays integral.
    let t2 = 2 * x + 1;
    let base2 = 1i64 << (k + 1); // 2 * 2^k
    // Nearest odd multiple of 2^k to the edge: exactly one of the two
    // enclosing multiples is odd.
    let q = t2.div_euclid(base2);
    let m = if q.rem_euclid(2) == 1 { q } else { q + 1 };
    let cx2 = m * base2; // 2 * cx*
    let east_of = t2 > cx2;
    let dist2 = (t2 - cx2).abs();
    let within = dist2 < base2 / 2; // |x + 1/2 - cx*| < 2^(k-1)
    // The unique center row y +- 2^(k-1) with valuation exactly k.
    let half = 1i64 << b;
    let cy = [y - half, y + half]
        .into_iter()
        .find(|&c| c != 0 && v2(c) == k)
        .expect("one of y +- 2^(k-1) has valuation k");
    let side_is_top = y > cy;
    let head = if within { east_of } else { !east_of };
    match (within, k % 2 == 0) {
        (true, true) => match (head, side_is_top) {
            (false, false) => 5,
            (false, true) => 6,
            (true, false) => 7,
            (true, true) => 8,
        },
        (true, false) => match (head, side_is_top) {
            (false, false) => 3,
            (false, true) => 4,
            (true, false) => 9,
            (true, true) => 10,
        },
        (false, _) => match (head, side_is_top) {
            (false, true) => 1,
            (false, false) => 2,
            (true, true) => 11,
            (true, false) => 12,
        },
    }
}

/// The tile at cell (x, y) of the reference tiling, as (top, right,
/// bottom, left). Both coordinates must be nonzero, as must x-1 and y-1
/// when they are consulted; callers keep windows away from the axes.
pub fn tile_at(x: i64, y: i64) -> [u8; 4] {
    let partner = |l: u8| 13 - l;
    let e = east_label(x, y);
    let w = partner(east_label(x - 1, y));
    let n = east_label(y, -x);
    let s = partner(east_label(y - 1, -x));
    [n, e, s, w]
}

/// Extract an L x H window of the reference tiling with the top-left cell
/// at (x0, y0) in reference coordinates (rows go south).
pub fn reference_window(width: usize, height: usize, x0: i64, y0: i64) -> Tiling {
    let mut cells = Vec::with_capacity(width * height);
    for r in 0..height {
        for c in 0..width {
            cells.push(tile_at(x0 + c as i64, y0 - r as i64));
        }
    }
    Tiling { width, height, cells }
}

/// Offsets so that the window [x0, x0+w) x (y0-h, y0] avoids both axes.
pub fn window_in_quadrant(height: usize, ox: i64, oy: i64) -> (i64, i64) {
    (ox.max(1), oy.max(height as i64 + 1))
}

/// Label involution implementing the reflection (swap of the side-arrow
/// position descriptor): adjacent labels swap.
pub fn reflection_involution() -> Vec<u8> {
    vec![2, 1, 4, 3, 6, 5, 8, 7, 10, 9, 12, 11]
}

/// Build the bundled tile set by sweeping reference windows over a region
/// large enough to exhibit every local configuration up to the 32-square
/// level, then closing under rotation and reflection.
pub fn build_default_tileset() -> TileSet {
    let mut tiles: BTreeSet<[u8; 4]> = BTreeSet::new();
    let refl = {
        let mut r = [0u8; 12];
        r.copy_from_slice(&reflection_involution());
        r
    };
    let extent = 130i64;
    for x in 1..=extent {
        for y in 1..=extent {
            let t = tile_at(x, y);
            let mut u = t;
            for _ in 0..4 {
                tiles.insert(u);
                tiles.insert(reflect_tile(u, &refl));
                u = rotate_tile(u);
            }
        }
    }
    TileSet {
        version: "edge12-hierarchy-v1".into(),
        match_table: MatchTable::standard(),
        reflection_involution: reflection_involution(),
        tiles,
        red_corner_tuples: super::RED_CORNERS.to_vec(),
        red_arm_edge_pairs: super::RED_ARM_PAIRS.to_vec(),
    }
}
