use gapforge_core::tiling::reference::build_default_tileset;
use gapforge_core::tiling::segments::{count_red_segments, segment_bounds};
use gapforge_core::tiling::solver::{solve_tiling, Pin};
use std::collections::BTreeSet;
use std::time::Instant;

fn main() {
    let ts = build_default_tileset();
    println!("tiles: {}", ts.tiles.len());
    let tiles: Vec<[u8;4]> = ts.tiles.iter().copied().collect();

    // 1. Many solutions at 16x16: distincts and counts.
    let t0 = Instant::now();
    let sols = solve_tiling(16, 16, &ts, &[], 500).unwrap();
    let (lo, hi) = segment_bounds(16, 16, 1);
    let distinct: BTreeSet<Vec<[u8;4]>> = sols.iter().map(|s| s.cells.clone()).collect();
    let mut bad = 0;
    let mut totals: BTreeSet<usize> = BTreeSet::new();
    for s in &sols {
        let c = count_red_segments(s, 1);
        totals.insert(c.total);
        if !((lo..=hi).contains(&(c.total as i64))) { bad += 1; }
    }
    println!("16x16 limit 500: {} sols ({} distinct) in {:?}; totals {:?}; bad {}", sols.len(), distinct.len(), t0.elapsed(), totals, bad);

    // 2. Random single-tile pins at random positions: every satisfiable pin set must still satisfy bounds.
    let mut rng: u64 = 0xfeedface;
    let mut next = move || { rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); rng >> 16 };
    let t1 = Instant::now();
    let mut solved = 0; let mut unsat = 0; let mut bad2 = 0;
    for _trial in 0..400 {
        let r = (next() % 16) as usize;
        let c = (next() % 16) as usize;
        let tile = tiles[(next() as usize) % tiles.len()];
        let pins = [Pin { row: r, col: c, tile }];
        let sols = solve_tiling(16, 16, &ts, &pins, 3).unwrap();
        if sols.is_empty() { unsat += 1; continue; }
        solved += 1;
        for s in &sols {
            let tot = count_red_segments(s, 1).total as i64;
            if !((lo..=hi).contains(&tot)) {
                bad2 += 1;
                println!("  BAD: pin {:?} at ({},{}) -> total {}", tile, r, c, tot);
            }
        }
    }
    println!("400 single-pin trials: {} satisfiable, {} unsat, {} bad in {:?}", solved, unsat, bad2, t1.elapsed());

    // 3. Two random pins far apart.
    let t2 = Instant::now();
    let mut solved2 = 0; let mut unsat2 = 0; let mut bad3 = 0;
    for _trial in 0..300 {
        let pins = [
            Pin { row: (next() % 8) as usize, col: (next() % 8) as usize, tile: tiles[(next() as usize) % tiles.len()] },
            Pin { row: 8 + (next() % 8) as usize, col: 8 + (next() % 8) as usize, tile: tiles[(next() as usize) % tiles.len()] },
        ];
        let sols = solve_tiling(16, 16, &ts, &pins, 2).unwrap();
        if sols.is_empty() { unsat2 += 1; continue; }
        solved2 += 1;
        for s in &sols {
            let tot = count_red_segments(s, 1).total as i64;
            if !((lo..=hi).contains(&tot)) { bad3 += 1; }
        }
    }
    println!("300 double-pin trials: {} sat, {} unsat, {} bad in {:?}", solved2, unsat2, bad3, t2.elapsed());

    // 4. Exhaustive-ish 8x8 enumeration.
    let t3 = Instant::now();
    let all8 = solve_tiling(8, 8, &ts, &[], 100000).unwrap();
    let (lo8, hi8) = segment_bounds(8, 8, 1);
    let mut bad8 = 0;
    let mut totals8: BTreeSet<usize> = BTreeSet::new();
    for s in &all8 {
        let c = count_red_segments(s, 1).total;
        totals8.insert(c);
        if !((lo8..=hi8).contains(&(c as i64))) { bad8 += 1; }
    }
    println!("8x8 exhaustive: {} tilings in {:?}; totals {:?}; bad {}", all8.len(), t3.elapsed(), totals8, bad8);

    // 5. n=2 check on 40x40: bounds (0+...) let's see.
    let t4 = Instant::now();
    let sols40 = solve_tiling(40, 40, &ts, &[], 5).unwrap();
    let (lo2, hi2) = segment_bounds(40, 40, 2);
    let mut report = vec![];
    for s in &sols40 {
        let c1 = count_red_segments(s, 1).total as i64;
        let c2 = count_red_segments(s, 2).total as i64;
        report.push((c1, c2));
    }
    let (l1, h1) = segment_bounds(40, 40, 1);
    println!("40x40 ({:?}): n=1 bounds [{},{}], n=2 bounds [{},{}]; samples {:?}", t4.elapsed(), l1, h1, lo2, hi2, report);
}
