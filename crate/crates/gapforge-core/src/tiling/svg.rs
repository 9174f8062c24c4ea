//! SVG rendering of tilings: colored square outlines plus defect marks.

use super::{TileSet, Tiling};

fn edge_color(label: u8) -> Option<&'static str> {
    match label {
        5..=8 => Some("#c0392b"),
        3 | 4 | 9 | 10 => Some("#27ae60"),
        _ => None,
    }
}

/// Render the tiling as an SVG document. Each cell shows the line crossings
/// implied by its edge labels; defects (relative to `ts`) are hatched.
pub fn render_svg(t: &Tiling, ts: &TileSet) -> String {
    let cell = 24.0;
    let w = t.width as f64 * cell;
    let h = t.height as f64 * cell;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{w}\" height=\"{h}\" fill=\"#fdfdfd\"/>\n"
    ));
    for r in 0..t.height {
        for c in 0..t.width {
            let x0 = c as f64 * cell;
            let y0 = r as f64 * cell;
            let tile = t.cell(r, c);
            out.push_str(&format!(
                "<rect x=\"{x0}\" y=\"{y0}\" width=\"{cell}\" height=\"{cell}\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n"
            ));
            let (xm, ym) = (x0 + cell / 2.0, y0 + cell / 2.0);
            // Half-strokes from each crossed edge toward the cell center.
            let strokes = [
                (tile[0], xm, y0, xm, ym),
                (tile[1], x0 + cell, ym, xm, ym),
                (tile[2], xm, y0 + cell, xm, ym),
                (tile[3], x0, ym, xm, ym),
            ];
            for (label, x1, y1, x2, y2) in strokes {
                if let Some(color) = edge_color(label) {
                    out.push_str(&format!(
                        "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n"
                    ));
                }
            }
            if super::RED_CORNERS.contains(&tile) {
                out.push_str(&format!(
                    "<circle cx=\"{xm}\" cy=\"{ym}\" r=\"3\" fill=\"#c0392b\"/>\n"
                ));
            }
            if !ts.contains(&tile) {
                out.push_str(&format!(
                    "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\" stroke-width=\"1.5\"/>\n",
                    x0 + cell,
                    y0 + cell
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
