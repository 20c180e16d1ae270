//! Growing a wall one sequence entry at a time: each append adds one
//! diagonal, and every new entry is either determined (forced, exactly
//! when the cell above-left is zero) or free (it ranges over the whole
//! field as the appended entry varies).
//!
//! Run with: cargo run --example incremental_wall

use numberwall::field::FieldSpec;
use numberwall::seq::Seq;
use numberwall::wall::Wall;

fn main() -> numberwall::Result<()> {
    let field = FieldSpec::make(5, 1, None)?;
    let codes = [1u16, 1, 3, 2, 1, 0, 0, 0, 2, 0, 2, 0];
    let mut wall = Wall::frame(&Seq::from_codes(field.clone(), vec![codes[0]])?)?;
    for &c in &codes[1..] {
        let (next, diagonal) = wall.extend_diagonal(c)?;
        let determined: Vec<String> = diagonal
            .iter()
            .filter(|e| e.determined)
            .map(|e| format!("({},{})", e.m, e.n))
            .collect();
        println!(
            "append {c}: wall length {:>2}, {} new entries, determined: {}",
            next.len(),
            diagonal.len(),
            if determined.is_empty() {
                "none".to_string()
            } else {
                determined.join(" ")
            }
        );
        wall = next;
    }
    // the incrementally grown wall equals the batch build
    let batch = Wall::frame(&Seq::from_codes(field, codes.to_vec())?)?;
    assert_eq!(wall.windows(), batch.windows());
    println!("\nincremental build matches the batch build; final wall:\n");
    println!("{}", wall.to_text());
    Ok(())
}
