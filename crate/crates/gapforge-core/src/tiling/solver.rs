//! Depth-first tiling search with arc-consistency propagation.
//!
//! Deterministic: first-fail variable order with row-major tie-break,
//! lexicographic value order over the sorted tile list. Outward boundary
//! edges are unconstrained.

use super::{TileSet, Tiling};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("pin at ({0}, {1}) outside the {2}x{3} grid")]
    PinOutOfRange(usize, usize, usize, usize),
    #[error("pinned tile {0:?} is not in the tile set")]
    PinNotInSet([u8; 4]),
}

#[derive(Debug, Clone, Copy)]
pub struct Pin {
    pub row: usize,
    pub col: usize,
    pub tile: [u8; 4],
}

const WORDS: usize = 4; // up to 256 tiles

#[derive(Clone, Copy, PartialEq)]
struct Mask([u64; WORDS]);

impl Mask {
    fn empty() -> Self {
        Mask([0; WORDS])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&mut self, other: &Mask) {
        for w in 0..WORDS {
            self.0[w] &= other.0[w];
        }
    }
    fn or(&mut self, other: &Mask) {
        for w in 0..WORDS {
            self.0[w] |= other.0[w];
        }
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..WORDS).flat_map(move |w| {
            let mut bits = self.0[w];
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }
}

/// Precomputed neighbor-compatibility tables.
struct Tables {
    tiles: Vec<[u8; 4]>,
    /// east_ok[t] = tiles allowed directly east of tile t, etc.
    east_ok: Vec<Mask>,
    west_ok: Vec<Mask>,
    south_ok: Vec<Mask>,
    north_ok: Vec<Mask>,
    full: Mask,
}

impl Tables {
    fn new(ts: &TileSet) -> Self {
        let tiles: Vec<[u8; 4]> = ts.tiles.iter().copied().collect();
        assert!(tiles.len() <= WORDS * 64, "tile set too large for solver masks");
        let m = &ts.match_table;
        let n = tiles.len();
        let mut east_ok = vec![Mask::empty(); n];
        let mut west_ok = vec![Mask::empty(); n];
        let mut south_ok = vec![Mask::empty(); n];
        let mut north_ok = vec![Mask::empty(); n];
        for (a, ta) in tiles.iter().enumerate() {
            for (b, tb) in tiles.iter().enumerate() {
                if tb[3] == m.partner(ta[1]) {
                    east_ok[a].set(b);
                    west_ok[b].set(a);
                }
                if tb[0] == m.partner(ta[2]) {
                    south_ok[a].set(b);
                    north_ok[b].set(a);
                }
            }
        }
        let mut full = Mask::empty();
        for i in 0..n {
            full.set(i);
        }
        Tables { tiles, east_ok, west_ok, south_ok, north_ok, full }
    }
}

struct Search<'a> {
    t: &'a Tables,
    width: usize,
    height: usize,
    limit: usize,
    solutions: Vec<Tiling>,
}

impl Search<'_> {
    /// Re-establish arc consistency starting from the queued cells.
    /// Returns false on a wiped-out domain.
    fn propagate(&self, domains: &mut [Mask], mut queue: Vec<usize>) -> bool {
        let w = self.width;
        let h = self.height;
        while let Some(cell) = queue.pop() {
            let (r, c) = (cell / w, cell % w);
            let neighbors: [(bool, usize, &Vec<Mask>); 4] = [
                (c + 1 < w, cell + 1, &self.t.east_ok),
                (c > 0, cell.wrapping_sub(1), &self.t.west_ok),
                (r + 1 < h, cell + w, &self.t.south_ok),
                (r > 0, cell.wrapping_sub(w), &self.t.north_ok),
            ];
            for (ok, ncell, table) in neighbors {
                if !ok {
                    continue;
                }
                let mut allowed = Mask::empty();
                for ti in domains[cell].iter_ones() {
                    allowed.or(&table[ti]);
                }
                let mut nd = domains[ncell];
                nd.and(&allowed);
                if nd.is_empty() {
                    return false;
                }
                if nd != domains[ncell] {
                    domains[ncell] = nd;
                    queue.push(ncell);
                }
            }
        }
        true
    }

    fn dfs(&mut self, domains: &mut Vec<Mask>) {
        if self.solutions.len() >= self.limit {
            return;
        }
        // First-fail: smallest domain larger than one; row-major tie-break.
        let mut best: Option<(u32, usize)> = None;
        for (i, d) in domains.iter().enumerate() {
            let k = d.count();
            if k > 1 {
                match best {
                    Some((bk, _)) if bk <= k => {}
                    _ => best = Some((k, i)),
                }
            }
        }
        let Some((_, cell)) = best else {
            // All singletons: record the solution.
            let cells = domains
                .iter()
                .map(|d| self.t.tiles[d.iter_ones().next().unwrap()])
                .collect();
            self.solutions.push(Tiling {
                width: self.width,
                height: self.height,
                cells,
            });
            return;
        };
        let options: Vec<usize> = domains[cell].iter_ones().collect();
        for ti in options {
            let mut trial = domains.clone();
            trial[cell] = Mask::empty();
            trial[cell].set(ti);
            if self.propagate(&mut trial, vec![cell]) {
                self.dfs(&mut trial);
                if self.solutions.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// `solve_tiling(L, H, ts, pins, limit)`: up to `limit` defect-free tilings
/// in deterministic order; empty result means unsatisfiable under the pins.
pub fn solve_tiling(
    width: usize,
    height: usize,
    ts: &TileSet,
    pins: &[Pin],
    limit: usize,
) -> Result<Vec<Tiling>, SolveError> {
    let tables = Tables::new(ts);
    let mut domains = vec![tables.full; width * height];
    let mut queue = Vec::new();
    for pin in pins {
        if pin.row >= height || pin.col >= width {
            return Err(SolveError::PinOutOfRange(pin.row, pin.col, width, height));
        }
        let Some(ti) = tables.tiles.iter().position(|t| *t == pin.tile) else {
            return Err(SolveError::PinNotInSet(pin.tile));
        };
        let cell = pin.row * width + pin.col;
        let mut m = Mask::empty();
        m.set(ti);
        domains[cell].and(&m);
        queue.push(cell);
    }
    let mut search = Search {
        t: &tables,
        width,
        height,
        limit,
        solutions: Vec::new(),
    };
    if queue.is_empty() {
        queue = (0..width * height).collect();
    }
    if search.propagate(&mut domains, queue) {
        search.dfs(&mut domains);
    }
    Ok(search.solutions)
}

#[cfg(test)]
mod tests {
    use super::super::reference::build_default_tileset;
    use super::super::MatchTable;
    use super::*;

    #[test]
    fn one_by_one_yields_every_tile() {
        let ts = build_default_tileset();
        let sols = solve_tiling(1, 1, &ts, &[], usize::MAX).unwrap();
        assert_eq!(sols.len(), ts.tiles.len());
    }

    #[test]
    fn contradictory_pins_give_empty() {
        let ts = build_default_tileset();
        // Adjacent corner pins with mismatched shared edge: east neighbor of
        // (1,6,5,2) must carry west label 7, the corner itself has 2.
        let pins = [
            Pin { row: 0, col: 0, tile: [1, 6, 5, 2] },
            Pin { row: 0, col: 1, tile: [1, 6, 5, 2] },
        ];
        let sols = solve_tiling(2, 2, &ts, &pins, 10).unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn solutions_are_edge_consistent_and_defect_free() {
        let ts = build_default_tileset();
        let table = MatchTable::standard();
        let sols = solve_tiling(4, 4, &ts, &[], 5).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            assert!(s.edges_consistent(&table));
            assert!(s.defect_positions(&ts).is_empty());
        }
    }
}
