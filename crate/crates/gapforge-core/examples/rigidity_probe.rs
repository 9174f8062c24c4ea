use gapforge_core::tiling::reference::build_default_tileset;
use gapforge_core::tiling::segments::{count_red_segments, segment_bounds};
use gapforge_core::tiling::solver::solve_tiling;
use std::time::Instant;

fn main() {
    let ts = build_default_tileset();
    for size in [8usize, 16] {
        let t0 = Instant::now();
        let sols = solve_tiling(size, size, &ts, &[], 25).unwrap();
        let (lo, hi) = segment_bounds(size as u64, size as u64, 1);
        println!("{}x{}: {} solutions in {:?}", size, size, sols.len(), t0.elapsed());
        let mut bad = 0;
        for (i, s) in sols.iter().enumerate() {
            let c = count_red_segments(s, 1);
            let inside = (lo..=hi).contains(&(c.total as i64));
            if !inside { bad += 1; }
            if i < 6 || !inside {
                println!("  sol {}: total={} (t{} b{} l{} r{}) in [{},{}]: {}", i, c.total, c.top, c.bottom, c.left, c.right, lo, hi, inside);
            }
        }
        println!("  out-of-bounds: {}", bad);
    }
}
