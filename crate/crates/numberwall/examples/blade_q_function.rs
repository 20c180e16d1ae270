//! The Q-function: how many 2m-entry extensions carry one right-side
//! blade shape to another. The closed-form table is checked against raw
//! enumeration over many seed walls, including the two-entry tree
//! diagrams it is built from.
//!
//! Run with: cargo run --release --example blade_q_function

use numberwall::census::{find_seeds, q_enumerate_all, q_formula, tree_diagram_expected};
use numberwall::field::FieldSpec;
use numberwall::wall::BladeShape;

fn main() -> numberwall::Result<()> {
    let field = FieldSpec::make(3, 1, None)?;
    let q = field.order();

    let b1 = BladeShape::AllNonzero;
    let seeds = find_seeds(&field, b1, 8)?;
    println!(
        "tree diagram from blade {} over GF({q}) (counts over all q^2 = {} two-entry extensions):",
        b1.label(),
        q * q
    );
    for (shape, count) in tree_diagram_expected(b1, q)? {
        println!("  -> {:<5} expected {count}", shape.label());
    }
    let observed = q_enumerate_all(&seeds[0], 1)?;
    println!("  observed on one seed: {observed:?}");

    println!("\nQ(B1, B2, m) closed form vs enumeration (seed-independent):");
    for b2 in [BladeShape::AllNonzero, BladeShape::TopRightZero, BladeShape::BottomZero] {
        for m in 1..=3u32 {
            let formula = q_formula(b1, b2, m, q)?;
            let counts: Vec<i128> = seeds
                .iter()
                .map(|s| {
                    q_enumerate_all(s, m)
                        .map(|c| c.get(b2.label()).copied().unwrap_or(0))
                })
                .collect::<numberwall::Result<_>>()?;
            let all_equal = counts.windows(2).all(|w| w[0] == w[1]);
            println!(
                "  Q({}, {}, {m}) = {formula}; enumerated {} across {} seeds ({})",
                b1.label(),
                b2.label(),
                counts[0],
                counts.len(),
                if all_equal && counts[0] == formula { "match" } else { "MISMATCH" },
            );
        }
    }
    Ok(())
}
