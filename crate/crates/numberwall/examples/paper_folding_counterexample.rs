//! The signed paper-folding sequence over GF(3): windows in its wall stay
//! bounded (sizes 1 and 3 only), which is the finite shadow of a Laurent
//! series violating the t-adic Littlewood conjecture.
//!
//! Run with: cargo run --release --example paper_folding_counterexample

use std::collections::BTreeMap;

use numberwall::field::FieldSpec;
use numberwall::littlewood::{window_check, AddressMode, GrowthFn};
use numberwall::seq::{signed_embedding, RecipeKind, SeqRecipe};
use numberwall::wall::Wall;

fn main() -> numberwall::Result<()> {
    let field = FieldSpec::make(3, 1, None)?;
    for exp in [5u32, 6, 7] {
        let len = 3usize.pow(exp);
        let mut recipe = SeqRecipe::new(RecipeKind::PaperFolding { level: 1 }, len, field.clone());
        recipe.embedding = signed_embedding(&field, 1)?;
        let seq = recipe.materialize()?;
        let wall = Wall::frame(&seq)?;

        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for win in wall.windows().iter().filter(|w| w.status.is_determined()) {
            *sizes.entry(win.l).or_insert(0) += 1;
        }
        let check = window_check(&wall, 4, &GrowthFn::Constant(1), AddressMode::Column)?;
        println!(
            "prefix 3^{exp} = {len:>4}: determined window sizes {sizes:?}; growth check at l = 4: {}",
            check.verdict
        );
    }
    println!(
        "\nNo window ever reaches size 4: every Littlewood product f(|N|)|N||N|_t|<NΘ>| \
         stays at or above q^-4 on the checked range."
    );
    Ok(())
}
