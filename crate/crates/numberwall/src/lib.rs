//! Exact arithmetic engine for number walls over finite fields.
//!
//! A number wall of a sequence `S` is the table of determinants of all
//! square Toeplitz matrices drawn from consecutive entries of `S`. Zero
//! entries of such a table only occur in square "windows", and the whole
//! table satisfies a row recurrence (the frame constraints) that lets it
//! be generated in `O(r^2)` field operations instead of by determinant
//! evaluation.
//!
//! The crate provides:
//!
//! * [`field`]: exact arithmetic over GF(p^k), with instrumented
//!   operation counters;
//! * [`poly`]: polynomials over a field: division, irreducibility,
//!   base-p(t) expansion and the p(t)-adic norm;
//! * [`laurent`]: truncated Laurent series in `t^{-1}` with explicit
//!   precision bookkeeping, and the substitution `Θ(t) ↦ Θ(p(t))`;
//! * [`seq`]: sequence generators (paper-folding, seeded random,
//!   literals) and file parsing;
//! * [`wall`]: the number wall itself, built two ways (determinant
//!   oracle and frame recurrence), window detection and classification,
//!   frame ratios, blades;
//! * [`littlewood`]: the Diophantine layer: quality exponents for the
//!   t-adic / p(t)-adic Littlewood products, the window-growth checker,
//!   the two-sided equivalence audit, and the transference construction;
//! * [`census`]: brute-force enumeration of sequence spaces against the
//!   closed-form window/blade/rectangle counts;
//! * [`render`]: PPM rendering of walls;
//! * [`cli`]: the `nw` command-line front end.

pub mod census;
pub mod cli;
pub mod error;
pub mod field;
pub mod laurent;
pub mod littlewood;
pub mod poly;
pub mod render;
pub mod rng;
pub mod seq;
pub mod wall;

pub use error::Error;
pub use field::{Fe, FieldSpec};
pub use laurent::LaurentTrunc;
pub use poly::Poly;
pub use seq::Seq;
pub use wall::Wall;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
