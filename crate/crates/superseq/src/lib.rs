//! Supersequences of permutations over small alphabets.
//!
//! A word over the alphabet `{1..n}` is a *supersequence* if every one of the
//! `n!` permutations of the alphabet embeds in it as a subsequence. This crate
//! provides the machinery for studying them at desk scale (`n <= 16` for the
//! combinatorial primitives, `n <= 8` for exact search):
//!
//! * [`sequence`] — alphabets, words, parsing/formatting, frequencies.
//! * [`completeness`] — k-completeness tests (two independent engines),
//!   minimal complete prefixes, generation points.
//! * [`segmentation`] — forward/reverse segment structure, bold labeling,
//!   terminal letters, the head-terminal removal operation.
//! * [`constructions`] — Connell sequences, closed-form length bounds,
//!   block constructions, greedy pruning, and the built-in fixture corpus.
//! * [`search`] — exact minimum supersequence length and enumeration of
//!   minimal supersequences by canonical branch-and-bound.
//! * [`verifier`] — structural rule checks and the reporting suite.

pub mod completeness;
pub mod constructions;
pub mod error;
pub mod search;
pub mod segmentation;
pub mod sequence;
pub mod verifier;

pub use error::{Error, Result};
pub use sequence::{Alphabet, Letter, LetterSet, Sequence};
