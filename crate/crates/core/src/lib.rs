//! Toolkit for symbolic dynamics on one-sided shift spaces.
//!
//! The crate provides finite-word machinery (edit metric, edit balls),
//! language engines for the classical shift families (full shifts, SFTs,
//! β-shifts, S-gap shifts, coded systems and their block-code factors),
//! language decompositions with specification checkers and gluing maps,
//! thermodynamic sums (entropy, pressure, Gibbs ratios), and exact /
//! sampled level-2 large-deviation decay rates for cylinder measures.
//!
//! Everything is exhaustively checkable at desk scale: enumeration is
//! exact, counts use big integers where overflow is possible, and the
//! numeric estimators ship with independent oracles in the test suite.

pub mod approach;
pub mod budget;
pub mod config;
pub mod decomp;
pub mod dfa;
pub mod error;
pub mod ldp;
pub mod shifts;
pub mod thermo;
pub mod words;

pub use budget::Budget;
pub use error::{Error, Result};
pub use words::{Alphabet, EditScript, EditStep, Word};
