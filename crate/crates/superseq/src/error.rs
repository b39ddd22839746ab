//! Error taxonomy shared by all modules.

use crate::sequence::Letter;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A value is outside the domain a function is defined on
    /// (letter not in the alphabet, k out of range, alphabet too large, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An index or index pair does not resolve to a valid range.
    #[error("range error: {0}")]
    Range(String),

    /// Malformed sequence text.
    #[error("parse error: {0}")]
    Parse(String),

    /// The operation requires a supersequence and the input is not one.
    #[error("not a supersequence over {{1..{n}}}")]
    NotSupersequence { n: usize },

    /// The sequence is not k-complete, so no minimal k-complete prefix exists.
    #[error("sequence is not {k}-complete")]
    NotComplete { k: usize },

    /// A required letter does not occur where the definition needs it.
    #[error("letter {letter} does not occur in {place}")]
    MissingLetter { letter: Letter, place: String },

    /// No candidate letter occurs in a segment, so its terminal is undefined.
    #[error("terminal letter of segment {segment} is undefined: no candidate occurs in it")]
    UndefinedTerminal { segment: usize },

    /// The given word does not embed in the concatenated segments.
    #[error("the word is not generated by the segment list (it does not embed)")]
    NotGenerated,

    /// Search/enumeration was asked for something outside its supported range.
    #[error("unsupported: {0}")]
    Unsupported(String),
}
