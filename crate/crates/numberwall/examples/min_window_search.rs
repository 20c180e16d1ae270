//! Exhaustive search for sequences avoiding windows of a target size.
//! Over GF(2) no sequence avoids size-3 windows for long: the avoiders
//! die out entirely at length 57. Over GF(3) the signed paper-folding
//! sequence shows avoiders of size 4 exist at every tested length.
//!
//! Run with: cargo run --release --example min_window_search

use numberwall::census::{min_window_search, SearchOutcome};
use numberwall::field::FieldSpec;

fn main() -> numberwall::Result<()> {
    let f2 = FieldSpec::make(2, 1, None)?;
    let rep = min_window_search(&f2, 3, 60, 1 << 27)?;
    match rep.outcome {
        SearchOutcome::Exhausted {
            max_len_with_avoider,
            avoider_counts,
        } => {
            println!(
                "GF(2), target 3: exhausted after {} walls; the last avoider has length {}",
                rep.walls_built, max_len_with_avoider
            );
            let peak = avoider_counts
                .iter()
                .enumerate()
                .max_by_key(|&(_, c)| c)
                .unwrap();
            println!(
                "  avoider counts peak at length {} with {} survivors, then collapse:",
                peak.0, peak.1
            );
            for r in (44..=57).step_by(1) {
                if r < avoider_counts.len() {
                    println!("    length {r:>2}: {:>4} avoiders", avoider_counts[r]);
                }
            }
        }
        SearchOutcome::Witness { codes } => {
            println!("GF(2) witness (unexpected!): {codes:?}")
        }
    }

    let f3 = FieldSpec::make(3, 1, None)?;
    match min_window_search(&f3, 4, 40, 1 << 24)?.outcome {
        SearchOutcome::Witness { codes } => println!(
            "\nGF(3), target 4: a length-40 wall avoiding size-4 windows exists:\n  {codes:?}"
        ),
        SearchOutcome::Exhausted {
            max_len_with_avoider,
            ..
        } => println!("\nGF(3), target 4: exhausted at length {max_len_with_avoider}"),
    }
    Ok(())
}
