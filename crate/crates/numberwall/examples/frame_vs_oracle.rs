//! The frame-constraint generator reproduces the Toeplitz determinant
//! oracle entry for entry, at a tiny fraction of the field operations.
//!
//! Run with: cargo run --release --example frame_vs_oracle

use numberwall::field::FieldSpec;
use numberwall::rng::Rng;
use numberwall::seq::Seq;
use numberwall::wall::Wall;

fn main() -> numberwall::Result<()> {
    let mut rng = Rng::new(42);
    for r in [50usize, 100, 200] {
        let field = FieldSpec::make(3, 1, None)?;
        let codes: Vec<u16> = (0..r).map(|_| rng.code(3)).collect();
        let seq = Seq::from_codes(field.clone(), codes)?;

        field.reset_ops();
        let naive = Wall::naive(&seq)?;
        let naive_ops = field.ops_performed();

        field.reset_ops();
        let frame = Wall::frame(&seq)?;
        let frame_ops = field.ops_performed();

        for m in 0..=naive.depth() {
            for n in naive.col_lo(m)..=naive.col_hi(m) {
                assert_eq!(naive.get(m, n), frame.get(m, n), "entry ({m},{n})");
            }
        }
        println!(
            "r = {r:>3}: identical walls; determinant oracle {naive_ops:>12} field ops, \
             frame recurrence {frame_ops:>8} ({}x fewer)",
            naive_ops / frame_ops.max(1)
        );
    }
    Ok(())
}
