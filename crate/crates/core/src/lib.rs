//! Binary matrices whose rows are closed under a boolean operator.
//!
//! Rows are bit vectors of width at most 64. The crate computes closures,
//! column-sum statistics, canonical forms up to row and column permutation,
//! orthogonal bases, and certified witnesses for the half-column bounds that
//! hold under negation, NAND, NOR, XOR, XNOR, union with intersection, and
//! implication. [`enumeration`] runs these checks over every family of a small
//! width or over seeded random closures.
//!
//! Column indices are 0-based throughout the library.

pub mod basis;
pub mod bitcore;
pub mod cli;
pub mod enumeration;
pub mod equivalence;
pub mod error;
pub mod operators;
pub mod spaces;
pub mod witnesses;

pub use error::{Error, Result};
