//! Transference: substituting t -> p(t) in a Laurent series multiplies
//! every truncated Littlewood infimum exponent by deg p, carrying t-adic
//! counterexamples to p(t)-adic ones.
//!
//! Run with: cargo run --example transference

use numberwall::field::FieldSpec;
use numberwall::littlewood::transfer;
use numberwall::poly::Poly;
use numberwall::rng::Rng;

fn main() -> numberwall::Result<()> {
    let cases: [(u64, &str); 3] = [
        (3, "t^2+1"),
        (2, "t^2+t+1"),
        (2, "t^3+t+1"),
    ];
    let mut rng = Rng::new(7);
    for (p_char, pt) in cases {
        let field = FieldSpec::make(p_char, 1, None)?;
        let p = Poly::parse(field.clone(), pt)?;
        let m = p.degree().finite().unwrap();
        let b: Vec<u16> = (0..80).map(|_| rng.code(field.order())).collect();
        let rep = transfer(field.clone(), &b, &p, 3, 2, m * 70)?;
        println!(
            "{field}, p = {pt}: base infimum q^-{}, transferred q^-{} = (q^-{})^deg p; \
             per-witness scaling over {} candidates: {}",
            rep.base_field_inf,
            rep.transferred_inf,
            rep.base_field_inf,
            rep.pairs.len(),
            if rep.scaling_holds { "exact" } else { "BROKEN" },
        );
        for pair in rep.pairs.iter().take(4) {
            println!(
                "    M = {:<12} k = {}: e_base = {:>2}, e_trans = {:>2}",
                pair.m_poly, pair.k, pair.e_base, pair.e_trans
            );
        }
    }
    Ok(())
}
