//! Red-segment counting, the combinatorial segment bounds, and defect
//! injection.

use super::{TileSet, Tiling, RED_ARM_PAIRS, RED_CORNERS};
use serde::Serialize;

/// Counts of complete red segments of one size, by side type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SegmentCounts {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub total: usize,
}

fn red_pair(a: u8, b: u8) -> bool {
    RED_ARM_PAIRS.contains(&(a, b))
}

/// `count_red_segments(t, n)`: complete red segments of size 4^n.
///
/// A horizontal segment of size s is a run of s+1 cells in one row whose
/// ends are the matching corner tuples and whose s shared sites carry red
/// pairs from {(6,7),(7,6),(5,8),(8,5)}; vertical segments likewise down a
/// column. Corner roles: top side runs (1,6,5,2)..(2,1,6,5), bottom side
/// (6,5,2,1)..(5,2,1,6), left side (1,6,5,2) down to (6,5,2,1), right side
/// (2,1,6,5) down to (5,2,1,6).
pub fn count_red_segments(t: &Tiling, n: u32) -> SegmentCounts {
    let size = 4usize.pow(n);
    let [tl, tr, br, bl] = RED_CORNERS;
    let mut counts = SegmentCounts { top: 0, bottom: 0, left: 0, right: 0, total: 0 };

    // Horizontal runs.
    for r in 0..t.height {
        for c in 0..t.width {
            let start = t.cell(r, c);
            let (is_top, end_corner) = if start == tl {
                (true, tr)
            } else if start == bl {
                (false, br)
            } else {
                continue;
            };
            if c + size >= t.width {
                continue;
            }
            let mut ok = true;
            for k in 0..size {
                let a = t.cell(r, c + k);
                let b = t.cell(r, c + k + 1);
                if !red_pair(a[1], b[3]) {
                    ok = false;
                    break;
                }
                // Interior cells of the run must not themselves be corners.
                if k + 1 < size && RED_CORNERS.contains(&b) {
                    ok = false;
                    break;
                }
            }
            if ok && t.cell(r, c + size) == end_corner {
                if is_top {
                    counts.top += 1;
                } else {
                    counts.bottom += 1;
                }
            }
        }
    }
    // Vertical runs.
    for c in 0..t.width {
        for r in 0..t.height {
            let start = t.cell(r, c);
            let (is_left, end_corner) = if start == tl {
                (true, bl)
            } else if start == tr {
                (false, br)
            } else {
                continue;
            };
            if r + size >= t.height {
                continue;
            }
            let mut ok = true;
            for k in 0..size {
                let a = t.cell(r + k, c);
                let b = t.cell(r + k + 1, c);
                if !red_pair(a[2], b[0]) {
                    ok = false;
                    break;
                }
                if k + 1 < size && RED_CORNERS.contains(&b) {
                    ok = false;
                    break;
                }
            }
            if ok && t.cell(r + size, c) == end_corner {
                if is_left {
                    counts.left += 1;
                } else {
                    counts.right += 1;
                }
            }
        }
    }
    counts.total = counts.top + counts.bottom + counts.left + counts.right;
    counts
}

/// `segment_bounds(L, H, n)`: lower and upper bound on the number of
/// complete red segments of size 4^n in an L x H rectangle:
/// 4*floor(H/2^(2n+1))*floor(L/2^(2n+1)) -+ 2*(floor(H/..) + floor(L/..)).
pub fn segment_bounds(width: u64, height: u64, n: u32) -> (i64, i64) {
    let div = 1u64 << (2 * n + 1);
    let fh = (height / div) as i64;
    let fl = (width / div) as i64;
    let core = 4 * fh * fl;
    let swing = 2 * (fh + fl);
    (core - swing, core + swing)
}

/// `rigidity_bound(L, H, n, d)`: segment lower bound under d defects,
/// the segment_bounds lower term minus 8 d. May be vacuous (negative).
pub fn rigidity_bound(width: u64, height: u64, n: u32, defects: u64) -> i64 {
    segment_bounds(width, height, n).0 - 8 * defects as i64
}

/// `inject_defects(t, cells)`: replace each named cell by a deterministic
/// tuple outside the tile set; returns the modified tiling.
pub fn inject_defects(t: &Tiling, cells: &[(usize, usize)], ts: &TileSet) -> Tiling {
    let mut out = t.clone();
    for &(r, c) in cells {
        let orig = out.cell(r, c);
        let mut replaced = false;
        for delta in 1..12u8 {
            let cand = [(orig[0] - 1 + delta) % 12 + 1, orig[1], orig[2], orig[3]];
            if !ts.contains(&cand) {
                out.set_cell(r, c, cand);
                replaced = true;
                break;
            }
        }
        // A full label cycle always leaves the set unless the set contains
        // every variant of the tuple, which closure validation excludes.
        assert!(replaced, "no invalid tuple available at ({r},{c})");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::reference::{build_default_tileset, reference_window};
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(segment_bounds(8, 8, 1), (0, 8));
        assert_eq!(segment_bounds(16, 16, 1), (8, 24));
        assert_eq!(segment_bounds(4, 4, 1), (0, 0));
    }

    #[test]
    fn rigidity_examples() {
        assert_eq!(rigidity_bound(16, 16, 1, 0), 8);
        assert_eq!(rigidity_bound(16, 16, 1, 1), 0);
        assert_eq!(rigidity_bound(8, 8, 1, 2), -16);
    }

    #[test]
    fn reference_window_counts_lie_in_bounds() {
        for &(x0, y0) in &[(1i64, 40i64), (5, 21), (11, 19), (3, 77)] {
            let w = reference_window(16, 16, x0, y0);
            let counts = count_red_segments(&w, 1);
            let (lo, hi) = segment_bounds(16, 16, 1);
            assert!(
                (lo..=hi).contains(&(counts.total as i64)),
                "window ({x0},{y0}): {counts:?} outside [{lo},{hi}]"
            );
        }
    }

    #[test]
    fn four_by_four_has_no_complete_segment() {
        let w = reference_window(4, 4, 1, 30);
        assert_eq!(count_red_segments(&w, 1).total, 0);
    }

    #[test]
    fn one_by_one_zero_for_all_n() {
        let w = reference_window(1, 1, 3, 9);
        for n in 1..=3 {
            assert_eq!(count_red_segments(&w, n).total, 0);
        }
    }

    #[test]
    fn counts_against_geometric_oracle() {
        // Independent oracle: a complete size-4 side exists for each red
        // 4-square center (v2 = 2 in both coordinates) whose five side
        // cells lie inside the window; count each of the four sides.
        let (x0, y0) = (2i64, 35i64);
        let (w, h) = (20usize, 14usize);
        let window = reference_window(w, h, x0, y0);
        let counts = count_red_segments(&window, 1);
        let x_range = x0..(x0 + w as i64);
        let y_lo = y0 - h as i64 + 1;
        let y_range = y_lo..=y0;
        let mut top = 0;
        let mut bottom = 0;
        let mut left = 0;
        let mut right = 0;
        let v2ok = |t: i64| t != 0 && t.trailing_zeros() == 2;
        for cx in (x0 - 4)..(x0 + w as i64 + 4) {
            for cy in (y_lo - 4)..(y0 + 5) {
                if !v2ok(cx) || !v2ok(cy) {
                    continue;
                }
                let xs_in = (cx - 2..=cx + 2).all(|x| x_range.contains(&x));
                let ys_in = (cy - 2..=cy + 2).all(|y| y_range.contains(&y));
                if xs_in && y_range.contains(&(cy + 2)) {
                    top += 1;
                }
                if xs_in && y_range.contains(&(cy - 2)) {
                    bottom += 1;
                }
                if ys_in && x_range.contains(&(cx - 2)) {
                    left += 1;
                }
                if ys_in && x_range.contains(&(cx + 2)) {
                    right += 1;
                }
            }
        }
        assert_eq!(counts.top, top, "{counts:?}");
        assert_eq!(counts.bottom, bottom);
        assert_eq!(counts.left, left);
        assert_eq!(counts.right, right);
    }

    #[test]
    fn injecting_defects_counts_and_breaks_runs() {
        let ts = build_default_tileset();
        let w = reference_window(16, 16, 1, 40);
        let base = count_red_segments(&w, 1).total as i64;
        let d1 = inject_defects(&w, &[(3, 3)], &ts);
        assert_eq!(d1.defect_positions(&ts).len(), 1);
        let recount = count_red_segments(&d1, 1).total as i64;
        assert!(recount >= rigidity_bound(16, 16, 1, 1));
        assert!(recount <= base);
    }
}
