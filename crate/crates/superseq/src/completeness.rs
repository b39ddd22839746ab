//! k-completeness and supersequence testing.
//!
//! A *k-perm* is a word of `k` distinct alphabet letters. A word is
//! *k-complete* when every k-perm over its alphabet embeds in it as a
//! subsequence, and a *supersequence* when it is n-complete over `{1..n}`.
//!
//! Two engines are provided and kept permanently:
//!
//! * [`naive`] enumerates k-perms explicitly and greedy-matches each — the
//!   trusted oracle, quadratic-ish but obviously correct.
//! * [`Index`] answers the same queries by memoized dynamic programming over
//!   `(position, letter subset)`, exponentially faster for batch use.
//!
//! The key quantity for both is the *latest endpoint*: for a set `S` placed
//! at start position `p`, the largest over all permutations of `S` of the
//! smallest 1-based position where that permutation finishes embedding.
//! A prefix is k-complete exactly when every k-subset's latest endpoint is
//! defined and within it.

use std::sync::atomic::{AtomicI32, Ordering};

use crate::error::{Error, Result};
use crate::sequence::{Letter, LetterSet, Sequence};

/// Validates that `word` is a k-perm over `alphabet`: nonempty, distinct
/// letters, all inside the alphabet.
pub fn check_kperm(alphabet: crate::sequence::Alphabet, word: &[Letter]) -> Result<()> {
    if word.is_empty() {
        return Err(Error::Domain(
            "a k-perm must have at least one letter".into(),
        ));
    }
    let mut seen = LetterSet::EMPTY;
    for &a in word {
        if !alphabet.contains(a) {
            return Err(Error::Domain(format!(
                "letter {a} is outside the alphabet {{1..{}}}",
                alphabet.size()
            )));
        }
        if seen.contains(a) {
            return Err(Error::Domain(format!(
                "letter {a} repeats; a k-perm has distinct letters"
            )));
        }
        seen.insert(a);
    }
    Ok(())
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        Err(Error::Domain(format!(
            "k = {k} is out of range for an alphabet of size {n}"
        )))
    } else {
        Ok(())
    }
}

/// Reference engine: explicit enumeration of k-perms, greedy match per perm.
pub mod naive {
    use itertools::Itertools;

    use super::{check_k, Error, Result};
    use crate::sequence::Sequence;

    /// True iff every k-perm over the word's alphabet embeds in `w`.
    pub fn is_k_complete(w: &Sequence, k: usize) -> Result<bool> {
        check_k(k, w.n())?;
        Ok(w.alphabet()
            .letters()
            .permutations(k)
            .all(|perm| w.contains_subsequence(&perm)))
    }

    /// Length of the shortest k-complete prefix of `w`: the largest greedy
    /// embedding endpoint over all k-perms.
    pub fn min_complete_prefix(w: &Sequence, k: usize) -> Result<usize> {
        check_k(k, w.n())?;
        let mut worst = 0usize;
        for perm in w.alphabet().letters().permutations(k) {
            match w.greedy_embedding(&perm) {
                Some(positions) => worst = worst.max(*positions.last().unwrap()),
                None => return Err(Error::NotComplete { k }),
            }
        }
        Ok(worst)
    }

    /// True iff `w` contains every permutation of its whole alphabet.
    pub fn is_supersequence(w: &Sequence) -> bool {
        let n = w.n();
        if n == 0 {
            return true;
        }
        is_k_complete(w, n).expect("n is in range")
    }
}

const FAIL: i32 = -1;
const UNSET: i32 = 0;

/// Memoized completeness engine for one word.
///
/// Building the index is single-threaded; afterwards the index is logically
/// read-only and queries may run concurrently (the memo uses atomic cells
/// whose entries are idempotent pure-function values).
///
/// Memo layout: `(position, subset)` over `(len+1) * 2^n` cells, which the
/// 16-letter alphabet cap keeps bounded.
pub struct Index {
    n: usize,
    len: usize,
    /// `next[p * n + (a-1)]` = smallest 0-based position `>= p` holding
    /// letter `a`, or `len` when there is none.
    next: Vec<u32>,
    memo: Vec<AtomicI32>,
}

impl Index {
    pub fn new(w: &Sequence) -> Index {
        let n = w.n();
        let len = w.len();
        let mut next = vec![len as u32; (len + 1) * n.max(1)];
        if n > 0 {
            for p in (0..len).rev() {
                let (row, prev_row) = {
                    let (a, b) = next.split_at_mut((p + 1) * n);
                    (&mut a[p * n..], &b[..n])
                };
                row[..n].copy_from_slice(prev_row);
                row[w.letters()[p] as usize - 1] = p as u32;
            }
        }
        let memo_size = (len + 1) << n;
        let memo = std::iter::repeat_with(|| AtomicI32::new(UNSET))
            .take(memo_size)
            .collect();
        Index { n, len, next, memo }
    }

    /// Largest over all permutations of `set` of the minimal 1-based endpoint
    /// of an embedding that starts at 0-based position `p`; `FAIL` if some
    /// permutation does not embed there.
    fn endpoint(&self, p: usize, set: u16) -> i32 {
        if set == 0 {
            return p as i32;
        }
        let idx = (p << self.n) | set as usize;
        let cached = self.memo[idx].load(Ordering::Relaxed);
        if cached != UNSET {
            return cached;
        }
        let mut worst = 0i32;
        let mut bits = set;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits ^= bit;
            let a = bit.trailing_zeros() as usize; // letter a+1
            let q = self.next[p * self.n + a];
            if q == self.len as u32 {
                worst = FAIL;
                break;
            }
            let e = self.endpoint(q as usize + 1, set ^ bit);
            if e == FAIL {
                worst = FAIL;
                break;
            }
            worst = worst.max(e);
        }
        self.memo[idx].store(worst, Ordering::Relaxed);
        worst
    }

    /// True iff every permutation of `set` embeds in the suffix starting at
    /// 1-based position `start` (`start = len + 1` names the empty suffix).
    pub fn all_perms_embedded(&self, start: usize, set: LetterSet) -> Result<bool> {
        if start < 1 || start > self.len + 1 {
            return Err(Error::Range(format!(
                "start {start} is out of range for a word of length {}",
                self.len
            )));
        }
        if !set.is_subset_of(&LetterSet::full(self.n)) {
            return Err(Error::Domain(format!(
                "letter set {set} is outside the alphabet {{1..{}}}",
                self.n
            )));
        }
        Ok(self.endpoint(start - 1, set.bits()) != FAIL)
    }

    /// True iff every k-perm over the alphabet embeds in the word.
    pub fn is_k_complete(&self, k: usize) -> Result<bool> {
        check_k(k, self.n)?;
        Ok(self.for_all_k_subsets(k, |e| e != FAIL).is_some())
    }

    /// Length of the shortest k-complete prefix.
    pub fn min_complete_prefix(&self, k: usize) -> Result<usize> {
        check_k(k, self.n)?;
        let mut worst = 0i32;
        match self.for_all_k_subsets(k, |e| {
            worst = worst.max(e);
            e != FAIL
        }) {
            Some(()) => Ok(worst as usize),
            None => Err(Error::NotComplete { k }),
        }
    }

    /// Largest `k` such that the word is k-complete (0 when some letter is
    /// missing). Completeness is monotone: k-completeness implies
    /// (k-1)-completeness, because extending any (k-1)-perm to a k-perm keeps
    /// the original as an embedded prefix.
    pub fn completeness_level(&self) -> usize {
        let mut level = 0;
        for k in 1..=self.n {
            if !self.is_k_complete(k).expect("k in range") {
                break;
            }
            level = k;
        }
        level
    }

    /// True iff the word embeds every permutation of its full alphabet.
    pub fn is_supersequence(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.endpoint(0, LetterSet::full(self.n).bits()) != FAIL
    }

    /// Applies `f` to the latest endpoint of every k-subset; `None` as soon
    /// as `f` rejects one (used for both the boolean and max variants).
    fn for_all_k_subsets(&self, k: usize, mut f: impl FnMut(i32) -> bool) -> Option<()> {
        // Gosper's hack: iterate all k-bit subsets of an n-bit universe.
        let limit = 1u32 << self.n;
        let mut s = (1u32 << k) - 1;
        while s < limit {
            if !f(self.endpoint(0, s as u16)) {
                return None;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
        Some(())
    }
}

/// Convenience wrapper: builds an [`Index`] and tests n-completeness.
pub fn is_supersequence(w: &Sequence) -> bool {
    Index::new(w).is_supersequence()
}

/// Convenience wrapper over [`Index::is_k_complete`].
pub fn is_k_complete(w: &Sequence, k: usize) -> Result<bool> {
    Index::new(w).is_k_complete(k)
}

/// Convenience wrapper over [`Index::min_complete_prefix`].
pub fn min_complete_prefix(w: &Sequence, k: usize) -> Result<usize> {
    Index::new(w).min_complete_prefix(k)
}

/// Where a k-perm is generated within a segment list: the first segment whose
/// completion embeds the word, and the smallest prefix of that segment that
/// suffices. Both coordinates are 1-based; `absolute` is the endpoint in the
/// concatenation of all segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GenerationPoint {
    pub segment: usize,
    pub offset: usize,
    pub absolute: usize,
}

/// Locates the generation point of `word` (a k-perm) in `segments`.
///
/// The greedy embedding endpoint is minimal over all embeddings, so the
/// segment holding it is the smallest `k` with the word embedded in
/// `s_1 ... s_k`, and the offset is the smallest sufficient prefix of `s_k`.
pub fn generated_at(word: &[Letter], segments: &[Sequence]) -> Result<GenerationPoint> {
    let alphabet = match segments.first() {
        Some(s) => s.alphabet(),
        None => return Err(Error::Domain("empty segment list".into())),
    };
    if segments.iter().any(|s| s.alphabet() != alphabet) {
        return Err(Error::Domain("segments must share one alphabet".into()));
    }
    check_kperm(alphabet, word)?;
    let mut concat = Vec::new();
    for s in segments {
        concat.extend_from_slice(s.letters());
    }
    let concat = Sequence::new(alphabet, concat).expect("letters already validated");
    let positions = concat.greedy_embedding(word).ok_or(Error::NotGenerated)?;
    let absolute = *positions.last().unwrap();
    let mut before = 0usize;
    for (i, s) in segments.iter().enumerate() {
        if absolute <= before + s.len() {
            return Ok(GenerationPoint {
                segment: i + 1,
                offset: absolute - before,
                absolute,
            });
        }
        before += s.len();
    }
    unreachable!("endpoint lies within the concatenation");
}
