//! Fuzzy-number arithmetic and summability methods for sequences of fuzzy
//! numbers.
//!
//! The crate is organized around five layers:
//!
//! - [`fuzzy`]: fuzzy numbers as sampled α-cuts, their arithmetic and the
//!   supremum metric `D`.
//! - [`seqlang`]: a small text DSL defining sequences by α-level endpoint
//!   formulas in the variables `n` and `alpha`.
//! - [`sequences`]: builtin parameterized sequences behind one uniform
//!   interface, including the classic counterexample constructions.
//! - [`transforms`]: partial sums, Cesàro means, Euler means, Abel and Borel
//!   evaluations, Cauchy products and weighted tail sums.
//! - [`analysis`]: limit detection, growth and Tauberian condition checks,
//!   and whole-sequence summability classification.
//!
//! [`verify`] bundles the numerical theorem suites used by the CLI's
//! `verify` subcommand.

pub mod analysis;
pub mod fuzzy;
pub mod seqlang;
pub mod sequences;
pub mod transforms;
pub mod verify;

pub(crate) mod bigratio;

pub use fuzzy::{FuzzyError, FuzzyNumber, Tolerance};
pub use sequences::FuzzySequence;
pub use transforms::{TailBoundReport, TransformParams};
