//! Exact computations for the p-primary homotopy and mod p cohomology of the
//! smooth Whitehead spectrum `Wh(*)` at odd regular primes.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] holds valuations, binomials mod p and the regular-prime test.
//! * [`stems`] is the table of p-torsion in the stable stems below `|beta_2|`.
//! * [`ahss`] does class-level Atiyah-Hirzebruch bookkeeping for the charts
//!   computing `j_*(CP^inf)`, `pi_*(CP^inf)` and `pi_*(CPbar^inf_{-1})`.
//! * [`torsion`] has the closed-form torsion orders and assembles the torsion
//!   profile of `Wh(*)`, plus the translation to concordance spaces.
//! * [`steenrod`] is an odd-primary Steenrod algebra engine in the admissible
//!   basis, with module computations over it.
//! * [`whcohomology`] assembles the graded dimensions of `H^*(Wh(*); F_p)`.
//!
//! Everything is exact integer or `F_p` arithmetic.

pub mod ahss;
pub mod arith;
mod error;
pub mod stems;
pub mod steenrod;
pub mod torsion;
pub mod whcohomology;

pub use arith::OddPrime;
pub use error::{Error, Result};
