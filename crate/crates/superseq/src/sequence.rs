//! Alphabets, letters, and finite words over them.
//!
//! Letters are the integers `1..=n` for an alphabet of size `n <= 16`.
//! Positions are 1-based throughout the public API; negative positions count
//! from the end (`-1` is the last element), matching the usual slice notation
//! `w[i, j]` for the inclusive substring from `i` to `j`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A letter: `1..=16`. The value `0` never denotes a letter.
pub type Letter = u8;

/// Largest supported alphabet. Subset bitmasks and the memo tables of the
/// completeness engines are sized by `2^n`, so the cap keeps them bounded.
pub const MAX_ALPHABET: usize = 16;

/// The alphabet `{1..n}`. `n = 0` is the empty alphabet, which arises as the
/// result of removal operations on one-letter alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ALPHABET {
            return Err(Error::Domain(format!(
                "alphabet size {n} exceeds the supported maximum {MAX_ALPHABET}"
            )));
        }
        Ok(Alphabet { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter >= 1 && (letter as usize) <= self.n
    }

    /// Letters in increasing order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        1..=self.n as Letter
    }

    /// The full letter set as a bitmask.
    pub fn full_set(&self) -> LetterSet {
        LetterSet::full(self.n)
    }

    fn check(&self, letter: Letter) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "letter {letter} is outside the alphabet {{1..{}}}",
                self.n
            )))
        }
    }
}

/// A set of letters as a bitmask (bit `a-1` is letter `a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LetterSet(u16);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ALPHABET);
        if n == 0 {
            LetterSet(0)
        } else {
            LetterSet(((1u32 << n) - 1) as u16)
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut s = LetterSet(0);
        for &a in letters {
            s.insert(a);
        }
        s
    }

    pub fn bits(&self) -> u16 {
        self.0
    }

    pub fn from_bits(bits: u16) -> Self {
        LetterSet(bits)
    }

    pub fn insert(&mut self, letter: Letter) {
        debug_assert!(letter >= 1 && letter as usize <= MAX_ALPHABET);
        self.0 |= 1 << (letter - 1);
    }

    pub fn remove(&mut self, letter: Letter) {
        self.0 &= !(1 << (letter - 1));
    }

    pub fn without(mut self, letter: Letter) -> Self {
        self.remove(letter);
        self
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter >= 1 && letter as usize <= MAX_ALPHABET && self.0 & (1 << (letter - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(&self, other: &LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Letters in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (1..=MAX_ALPHABET as Letter).filter(move |&a| self.contains(a))
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Per-letter occurrence counts for one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyTable {
    counts: Vec<usize>, // index a-1 = count of letter a
}

impl FrequencyTable {
    pub fn get(&self, letter: Letter) -> usize {
        self.counts.get(letter as usize - 1).copied().unwrap_or(0)
    }

    /// `(letter, count)` pairs in letter order.
    pub fn entries(&self) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as Letter + 1, c))
    }

    /// Counts sorted in decreasing order — the frequency multiset.
    pub fn multiset(&self) -> Vec<usize> {
        let mut m = self.counts.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    pub fn min(&self) -> usize {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    alphabet: Alphabet,
    elems: Vec<Letter>,
}

impl Sequence {
    /// Builds a word, checking every element against the alphabet.
    pub fn new(alphabet: Alphabet, elems: Vec<Letter>) -> Result<Self> {
        for &a in &elems {
            alphabet.check(a)?;
        }
        Ok(Sequence { alphabet, elems })
    }

    /// Builds a word over the smallest alphabet containing its letters.
    pub fn from_letters(elems: &[Letter]) -> Result<Self> {
        let n = elems.iter().copied().max().unwrap_or(0) as usize;
        Sequence::new(Alphabet::new(n)?, elems.to_vec())
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Sequence {
            alphabet,
            elems: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.alphabet.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.elems
    }

    /// Element at 1-based position `i` (negative counts from the end).
    pub fn at(&self, i: isize) -> Result<Letter> {
        let p = self.resolve(i)?;
        Ok(self.elems[p - 1])
    }

    /// Resolves a possibly negative 1-based position to a positive one.
    fn resolve(&self, i: isize) -> Result<usize> {
        let len = self.elems.len() as isize;
        let r = if i > 0 { i } else { len + 1 + i };
        if i == 0 || r < 1 || r > len {
            return Err(Error::Range(format!(
                "position {i} is out of range for a word of length {len}"
            )));
        }
        Ok(r as usize)
    }

    /// Inclusive substring `w[i, j]`, 1-based; negative indices count from the
    /// end (`w[3, -2]` of a five-letter word is positions 3..=4).
    pub fn substring(&self, i: isize, j: isize) -> Result<Sequence> {
        let (i, j) = (self.resolve(i)?, self.resolve(j)?);
        if i > j {
            return Err(Error::Range(format!(
                "substring bounds resolve to {i} > {j}"
            )));
        }
        Ok(Sequence {
            alphabet: self.alphabet,
            elems: self.elems[i - 1..j].to_vec(),
        })
    }

    /// Prefix of length `k` (`k = 0` gives the empty word, `k <= len`).
    pub fn prefix(&self, k: usize) -> Result<Sequence> {
        if k > self.elems.len() {
            return Err(Error::Range(format!(
                "prefix length {k} exceeds word length {}",
                self.elems.len()
            )));
        }
        Ok(Sequence {
            alphabet: self.alphabet,
            elems: self.elems[..k].to_vec(),
        })
    }

    pub fn reversed(&self) -> Sequence {
        let mut elems = self.elems.clone();
        elems.reverse();
        Sequence {
            alphabet: self.alphabet,
            elems,
        }
    }

    /// Number of occurrences of `letter`.
    pub fn frequency(&self, letter: Letter) -> usize {
        self.elems.iter().filter(|&&a| a == letter).count()
    }

    /// Total occurrences of all letters in `set`.
    pub fn frequency_of_set(&self, set: LetterSet) -> usize {
        self.elems.iter().filter(|&&a| set.contains(a)).count()
    }

    pub fn frequencies(&self) -> FrequencyTable {
        let mut counts = vec![0usize; self.alphabet.n];
        for &a in &self.elems {
            counts[a as usize - 1] += 1;
        }
        FrequencyTable { counts }
    }

    /// 1-based position of the first occurrence of `letter`, if any.
    pub fn first_occurrence(&self, letter: Letter) -> Option<usize> {
        self.elems.iter().position(|&a| a == letter).map(|p| p + 1)
    }

    /// The set of letters that occur in the word.
    pub fn occurring_letters(&self) -> LetterSet {
        LetterSet::from_letters(&self.elems)
    }

    /// Greedy subsequence test: does `needle` embed in `self`?
    pub fn contains_subsequence(&self, needle: &[Letter]) -> bool {
        let mut it = self.elems.iter();
        needle.iter().all(|&want| it.any(|&got| got == want))
    }

    /// Greedy (leftmost) embedding of `needle`; returns the 1-based positions
    /// used, or `None` if it does not embed. The last entry is the smallest
    /// possible endpoint of any embedding of `needle`.
    pub fn greedy_embedding(&self, needle: &[Letter]) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(needle.len());
        let mut from = 0usize;
        for &want in needle {
            let rel = self.elems[from..].iter().position(|&got| got == want)?;
            from += rel + 1;
            out.push(from);
        }
        Some(out)
    }

    /// True if letters make their first appearances in increasing order
    /// (`1` first, then `2`, ...) and every alphabet letter occurs or none
    /// after the last occurring one does.
    pub fn is_canonical(&self) -> bool {
        let mut next_new: Letter = 1;
        for &a in &self.elems {
            if a > next_new {
                return false;
            }
            if a == next_new {
                next_new += 1;
            }
        }
        true
    }

    /// Relabels letters by order of first appearance, producing the canonical
    /// representative of the word's relabeling class. The alphabet size is
    /// preserved.
    pub fn canonicalized(&self) -> Sequence {
        let mut map = [0 as Letter; MAX_ALPHABET + 1];
        let mut next: Letter = 1;
        let mut elems = Vec::with_capacity(self.elems.len());
        for &a in &self.elems {
            if map[a as usize] == 0 {
                map[a as usize] = next;
                next += 1;
            }
            elems.push(map[a as usize]);
        }
        Sequence {
            alphabet: self.alphabet,
            elems,
        }
    }

    /// Parses the plain text form: letters separated by spaces and/or commas,
    /// with an optional `n=<int>;` header declaring the alphabet size and `#`
    /// starting a comment that runs to the end of the line.
    ///
    /// Without a header the alphabet is the smallest one containing the
    /// letters. `format` emits the header exactly when the alphabet size is
    /// not recoverable from the letters, so `parse(format(w)) == w` for every
    /// word `w`.
    pub fn parse(text: &str) -> Result<Sequence> {
        Sequence::parse_with_n(text, None)
    }

    /// As [`Sequence::parse`], but with an externally declared alphabet size.
    /// A header that contradicts `declared_n` is an error.
    pub fn parse_with_n(text: &str, declared_n: Option<usize>) -> Result<Sequence> {
        let body = match text.find('#') {
            Some(pos) => &text[..pos],
            None => text,
        };
        let mut rest = body.trim();
        let mut header_n: Option<usize> = None;
        if let Some(stripped) = rest.strip_prefix("n=") {
            let semi = stripped.find(';').ok_or_else(|| {
                Error::Parse("header must be terminated by ';' (expected `n=<int>;`)".into())
            })?;
            let num = stripped[..semi].trim();
            let n: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("invalid alphabet size {num:?} in header")))?;
            header_n = Some(n);
            rest = stripped[semi + 1..].trim();
        }
        let mut elems = Vec::new();
        for token in rest.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let v: u32 = token
                .parse()
                .map_err(|_| Error::Parse(format!("invalid letter {token:?}")))?;
            if v == 0 || v > MAX_ALPHABET as u32 {
                return Err(Error::Parse(format!(
                    "letter {v} is outside the supported range 1..={MAX_ALPHABET}"
                )));
            }
            elems.push(v as Letter);
        }
        if let (Some(h), Some(d)) = (header_n, declared_n) {
            if h != d {
                return Err(Error::Parse(format!(
                    "header declares n={h} but n={d} was requested"
                )));
            }
        }
        let max_letter = elems.iter().copied().max().unwrap_or(0) as usize;
        let n = declared_n.or(header_n).unwrap_or(max_letter);
        if max_letter > n {
            return Err(Error::Parse(format!(
                "letter {max_letter} exceeds the declared alphabet size {n}"
            )));
        }
        Sequence::new(Alphabet::new(n)?, elems)
    }

    /// Canonical text form; see [`Sequence::parse`] for the grammar.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_letter = self.elems.iter().copied().max().unwrap_or(0) as usize;
        let mut first = true;
        if self.alphabet.n != max_letter {
            write!(f, "n={};", self.alphabet.n)?;
            first = false;
        }
        for &a in &self.elems {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Sequence {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elems.iter())
    }
}
