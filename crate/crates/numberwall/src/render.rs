//! Binary PPM (P6) rendering of walls, one pixel per entry.
//!
//! Zero entries are red; a nonzero value with code `c` gets the gray level
//! `round(255 * c / q)`, so code 1 is the darkest shade and `q-1` the
//! lightest. Cells outside the triangular support are white. Rows are
//! emitted from `m = -2` downward, matching the usual figures.

use crate::wall::Wall;

pub const ZERO_RGB: [u8; 3] = [255, 0, 0];
pub const BACKGROUND_RGB: [u8; 3] = [255, 255, 255];

pub fn gray_level(code: u16, order: u32) -> u8 {
    // round(255 * c / q)
    ((255 * code as u32 + order / 2) / order) as u8
}

/// Render the wall to PPM bytes. Width `r + 4`, height `depth + 3`.
pub fn wall_to_ppm(w: &Wall) -> Vec<u8> {
    let width = w.len() + 4;
    let height = (w.depth() + 3) as usize;
    let q = w.field().order();
    let mut out = Vec::with_capacity(32 + 3 * width * height);
    out.extend_from_slice(format!("P6\n{} {}\n255\n", width, height).as_bytes());
    for m in -2..=w.depth() {
        for x in 0..width {
            let n = x as i64 - 1;
            let px = match w.get(m, n) {
                None => BACKGROUND_RGB,
                Some(0) => ZERO_RGB,
                Some(c) => {
                    let g = gray_level(c, q);
                    [g, g, g]
                }
            };
            out.extend_from_slice(&px);
        }
    }
    out
}
