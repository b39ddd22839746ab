//! Block-growth sequences, length-bound evaluators, baseline supersequence
//! constructions, and the reference fixture words used across the test suite
//! and the verification report.
//!
//! The bound formulas are evaluated exactly as published elsewhere — this
//! module never synthesizes the sequences those bounds describe. Baseline
//! words come from [`blocks_construction`] (always a supersequence) optionally
//! tightened by [`greedy_prune`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::completeness;
use crate::error::{Error, Result};
use crate::sequence::{Alphabet, Letter, Sequence};

/// Block-length growth rule for [`connell`]: lengths 1,2,3,4,… or 1,2,4,8,…
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockGrowth {
    Arithmetic,
    Geometric,
}

/// First `m` terms of the Connell-style sequence: blocks alternate runs of
/// odd and even integers (starting odd), each block continuing from the
/// smallest unused integer of the required parity, with block lengths growing
/// per `kind`.
pub fn connell(kind: BlockGrowth, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    let mut value: u64 = 1;
    let mut block = 0usize;
    while out.len() < m {
        block += 1;
        let len = match kind {
            BlockGrowth::Arithmetic => block as u64,
            BlockGrowth::Geometric => 1u64 << (block - 1),
        };
        for _ in 0..len {
            if out.len() == m {
                return out;
            }
            out.push(value);
            value += 2;
        }
        // The next block starts at the successor of the last value pushed,
        // which flips parity.
        value -= 1;
    }
    out
}

/// g(n): the sum of the first `n` terms of the geometric-growth sequence.
/// This is the conjectured minimum supersequence length over n letters.
pub fn connell_partial_sum(n: usize) -> u64 {
    connell(BlockGrowth::Geometric, n).iter().sum()
}

/// An exact rational, kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Fraction {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs());
        if g > 1 {
            num /= g as i64;
            den /= g as i64;
        }
        Fraction { num, den }
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn ceil(self) -> i64 {
        self.num.div_euclid(self.den) + i64::from(self.num.rem_euclid(self.den) != 0)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Free constants appearing in the asymptotic bound formulas. The published
/// statements fix none of them numerically, so callers supply values; the
/// defaults make the formulas well-defined without endorsing any magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    /// ε in the exponents 7/4+ε and the coefficient 5/2−ε.
    pub epsilon: f64,
    /// C_ε, the constant paired with ε.
    pub c_epsilon: f64,
    /// C in the n^(55/32) lower bound.
    pub c: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            epsilon: 0.01,
            c_epsilon: 1.0,
            c: 1.0,
        }
    }
}

/// Every published length bound evaluated at one alphabet size.
///
/// Upper bounds: `newey_upper` = n²−2n+4, `zalinescu_upper` = n²−2n+3,
/// `radomirovic_upper` = n²−(7/3)n+19/3 (exact), `tan_upper` =
/// n²−(5/2−ε)n+C_ε. Lower bounds: `kleitman_lower` = n²−C_ε·n^(7/4+ε),
/// `plaxton_lower` = n²−C·n^(55/32), and the conjectured `connell_partial_sum`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsTable {
    pub n: usize,
    pub connell_partial_sum: u64,
    pub newey_upper: i64,
    pub zalinescu_upper: i64,
    pub radomirovic_upper: Fraction,
    pub radomirovic_upper_ceil: i64,
    pub kleitman_lower: f64,
    pub plaxton_lower: f64,
    pub tan_upper: f64,
    pub tan_upper_ceil: i64,
    /// True when the tightest proven upper bound here (ceil of the
    /// n²−(7/3)n+19/3 formula) exceeds the conjectured partial-sum value —
    /// the interesting case being n=8, where 52 > 51.
    pub radomirovic_exceeds_connell: bool,
}

/// Evaluates all bound formulas at `n`. The two quadratic-with-typo upper
/// bounds are read with their `m` as `n` (see the report output for the
/// caveat); every value is a deterministic function of `(n, constants)`.
pub fn bounds_table(n: usize, constants: &BoundConstants) -> BoundsTable {
    let ni = n as i64;
    let nf = n as f64;
    let connell_sum = connell_partial_sum(n);
    let radomirovic = Fraction::new(3 * ni * ni - 7 * ni + 19, 3);
    let tan = nf * nf - (2.5 - constants.epsilon) * nf + constants.c_epsilon;
    BoundsTable {
        n,
        connell_partial_sum: connell_sum,
        newey_upper: ni * ni - 2 * ni + 4,
        zalinescu_upper: ni * ni - 2 * ni + 3,
        radomirovic_upper: radomirovic,
        radomirovic_upper_ceil: radomirovic.ceil(),
        kleitman_lower: nf * nf - constants.c_epsilon * nf.powf(1.75 + constants.epsilon),
        plaxton_lower: nf * nf - constants.c * nf.powf(55.0 / 32.0),
        tan_upper: tan,
        tan_upper_ceil: tan.ceil() as i64,
        radomirovic_exceeds_connell: radomirovic.ceil() > connell_sum as i64,
    }
}

/// Proven minimum supersequence lengths: 1, 3, 7, 12, 19, 28, 39, 52 for
/// n = 1..8. `None` beyond that.
pub fn known_min_length(n: usize) -> Option<usize> {
    [1, 3, 7, 12, 19, 28, 39, 52]
        .get(n.wrapping_sub(1))
        .copied()
}

/// The classical baseline: n copies of ⟨1,…,n⟩ concatenated. Always a
/// supersequence — any permutation embeds one letter per block.
pub fn blocks_construction(n: usize) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::Domain("blocks construction needs n >= 1".into()));
    }
    let alphabet = Alphabet::new(n)?;
    let block: Vec<Letter> = alphabet.letters().collect();
    let elems: Vec<Letter> = std::iter::repeat_with(|| block.iter().copied())
        .take(n)
        .flatten()
        .collect();
    Sequence::new(alphabet, elems)
}

/// Scans left to right once, deleting every element whose removal keeps the
/// word a supersequence. The result is deletion-minimal: a position rejected
/// against a longer word can never become deletable after later deletions,
/// since a supersequence that embeds in the smaller word embeds in the larger
/// one too. The fixed order makes the output deterministic.
pub fn greedy_prune(w: &Sequence) -> Result<Sequence> {
    if !completeness::is_supersequence(w) {
        return Err(Error::NotSupersequence { n: w.n() });
    }
    let mut kept: Vec<Letter> = w.letters().to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut candidate = kept.clone();
        candidate.remove(i);
        let probe = Sequence::new(w.alphabet(), candidate)?;
        if completeness::is_supersequence(&probe) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Sequence::new(w.alphabet(), kept)
}

/// A reference object: either one word, or a list of leading segments that
/// all share one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Word(Sequence),
    Segments(Vec<Sequence>),
}

fn word(n: usize, letters: &[Letter]) -> Fixture {
    Fixture::Word(Sequence::new(Alphabet::new(n).unwrap(), letters.to_vec()).unwrap())
}

fn segments(n: usize, parts: &[&[Letter]]) -> Fixture {
    let alphabet = Alphabet::new(n).unwrap();
    Fixture::Segments(
        parts
            .iter()
            .map(|p| Sequence::new(alphabet, p.to_vec()).unwrap())
            .collect(),
    )
}

/// The built-in reference corpus, keyed by stable names:
///
/// * `intro` — the seven-element word over three letters whose segmentation
///   is used throughout the documentation.
/// * `example3/1`..`example3/4` — the four admissible shapes of the first
///   four segments over eight letters (28 elements each; letter 8 twice,
///   letter 7 three times).
/// * `example4` — a 39-element supersequence over seven letters whose
///   top letter occurs only four times.
/// * `example5/1`..`example5/3` — the three seven-element supersequences
///   over three letters realizing the three possible frequency multisets.
pub fn fixtures() -> BTreeMap<&'static str, Fixture> {
    let mut m = BTreeMap::new();
    m.insert("intro", word(3, &[1, 2, 3, 1, 2, 1, 3]));
    m.insert(
        "example3/1",
        segments(
            8,
            &[
                &[1, 2, 3, 4, 5, 6, 7, 8],
                &[1, 2, 3, 4, 5, 6, 7],
                &[1, 8, 2, 3, 4, 5, 6],
                &[1, 7, 2, 3, 4, 5],
            ],
        ),
    );
    m.insert(
        "example3/2",
        segments(
            8,
            &[
                &[1, 2, 3, 4, 5, 6, 7, 8],
                &[1, 2, 3, 4, 5, 6, 8, 7],
                &[1, 2, 3, 4, 5, 6],
                &[1, 7, 2, 3, 4, 5],
            ],
        ),
    );
    m.insert(
        "example3/3",
        segments(
            8,
            &[
                &[1, 2, 3, 4, 5, 6, 7, 8],
                &[1, 2, 3, 4, 5, 6, 8, 7],
                &[1, 2, 3, 4, 5, 7, 6],
                &[1, 2, 3, 4, 5],
            ],
        ),
    );
    m.insert(
        "example3/4",
        segments(
            8,
            &[
                &[1, 2, 3, 4, 5, 6, 7, 8],
                &[1, 2, 3, 4, 5, 6, 7],
                &[1, 8, 2, 3, 4, 5, 7, 6],
                &[1, 2, 3, 4, 5],
            ],
        ),
    );
    m.insert(
        "example4",
        word(
            7,
            &[
                1, 2, 3, 4, 5, 6, 7, // segment 1
                1, 2, 3, 4, 5, 6, // segment 2
                1, 7, 2, 3, 4, 5, // segment 3
                1, 6, 2, 3, 7, 4, // segment 4
                1, 5, 6, 2, 3, // segment 5
                1, 4, 7, 5, 6, 2, // segment 6
                3, 1, 4, // segment 7
            ],
        ),
    );
    m.insert("example5/1", word(3, &[1, 2, 1, 3, 1, 2, 1]));
    m.insert("example5/2", word(3, &[1, 2, 1, 3, 2, 1, 2]));
    m.insert("example5/3", word(3, &[1, 2, 3, 1, 2, 1, 3]));
    m
}

/// Looks up one fixture by name; see [`fixtures`] for the catalog.
pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().remove(name)
}
