//! Build the number wall of a short GF(5) sequence, print it, list its
//! windows with their inner-frame ratios, and write a PPM image.
//!
//! Run with: cargo run --example figure_wall

use numberwall::field::FieldSpec;
use numberwall::render::wall_to_ppm;
use numberwall::seq::Seq;
use numberwall::wall::{frame_ratios, Wall, WindowStatus};

fn main() -> numberwall::Result<()> {
    let field = FieldSpec::make(5, 1, None)?;
    let seq = Seq::from_codes(field.clone(), vec![1, 1, 3, 2, 1, 0, 0, 0, 2, 0, 2, 0])?;
    let wall = Wall::frame(&seq)?;

    println!("wall of S = ({seq}) over {field}:\n");
    println!("{}", wall.to_text());

    println!("windows (l, n, m, status):");
    for win in wall.windows() {
        print!("  {:>2} at column {:>2}, row {:>2}  {:?}", win.l, win.n, win.m, win.status);
        if win.status == WindowStatus::Complete {
            let fr = frame_ratios(&wall, win)?;
            let sign = field.sign(win.l as i64).code();
            print!(
                "  ratios P={} Q={} R={} S={}  (PS = {} = (-1)^l QR = {})",
                fr.p,
                fr.q,
                fr.r,
                fr.s,
                field.mul(fr.p, fr.s),
                field.mul(sign, field.mul(fr.q, fr.r)),
            );
        }
        println!();
    }

    let path = std::env::temp_dir().join("figure_wall.ppm");
    std::fs::write(&path, wall_to_ppm(&wall))?;
    println!("\nPPM written to {}", path.display());
    Ok(())
}
