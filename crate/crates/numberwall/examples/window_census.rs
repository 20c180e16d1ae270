//! Count sequences whose walls carry a given window by full enumeration
//! and compare against the closed forms: q^{r-l} for square portions,
//! the two-regime rectangle formula, and the exact two-window product
//! for disjoint hat cones.
//!
//! Run with: cargo run --release --example window_census

use numberwall::census::{
    enumerate_portion, formula_rect, rect_sweep, two_window_census, RectParams, SquarePortion,
};
use numberwall::field::FieldSpec;

fn main() -> numberwall::Result<()> {
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let budget = 1 << 24;

    let f2 = FieldSpec::make(2, 1, None)?;
    let f3 = FieldSpec::make(3, 1, None)?;

    let rep = enumerate_portion(&f2, 5, SquarePortion { l: 1, n: 2, m: 0 }, jobs, budget)?;
    println!("{}: enumerated {} = formula {:?} [{:?}]", rep.params, rep.enumerated_value, rep.formula_value, rep.verdict);
    let rep = enumerate_portion(&f3, 7, SquarePortion { l: 2, n: 3, m: 1 }, jobs, budget)?;
    println!("{}: enumerated {} = formula {:?} [{:?}]", rep.params, rep.enumerated_value, rep.formula_value, rep.verdict);

    // rectangles: wide (d = 1) and tall (d = -1) regimes
    println!("\nrectangles over GF(2), r = 12:");
    let rects = [
        RectParams { l: 3, d: 1, n: 5, m: 1 },
        RectParams { l: 2, d: -1, n: 4, m: 0 },
    ];
    for rep in rect_sweep(&f2, 12, &rects, jobs, budget)? {
        println!("  {}: enumerated {} = formula {:?} [{:?}]", rep.params, rep.enumerated_value, rep.formula_value, rep.verdict);
    }
    println!("  (closed form at (l=3, d=1, n=5, m=1): {})", formula_rect(2, 12, 3, 1, 5, 1)?);

    // two windows with disjoint hat cones: exactly q^{r-l1-l2}
    let rep = two_window_census(
        &f2,
        10,
        SquarePortion { l: 1, n: 2, m: 0 },
        SquarePortion { l: 2, n: 7, m: 0 },
        4,
        jobs,
        budget,
    )?;
    println!("\ntwo windows, {}:\n  enumerated {} = formula {:?} [{:?}]", rep.params, rep.enumerated_value, rep.formula_value, rep.verdict);
    Ok(())
}
