//! Segment structure of supersequences.
//!
//! The *forward segmentation* of a supersequence cuts it at the endpoints of
//! its shortest k-complete prefixes: the k-th segment is what the shortest
//! k-complete prefix adds on top of the shortest (k-1)-complete one. The
//! *reverse segmentation* is the same construction on shortest k-complete
//! suffixes. Both are unique by construction.
//!
//! Two structural facts hold for every supersequence and are debug-asserted
//! on every segmentation computed: no segment is empty, and the last element
//! of each segment occurs nowhere else inside its segment.
//!
//! A word can be longer than its shortest n-complete prefix; the excess is
//! kept aside as the segmentation's *remainder* rather than being folded into
//! the last segment (which would break both facts above). For minimal
//! supersequences the remainder is always empty and the segments concatenate
//! to the whole word.

use serde::Serialize;

use crate::completeness::Index;
use crate::error::{Error, Result};
use crate::sequence::{Letter, LetterSet, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Reverse,
}

/// The segment decomposition of one supersequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    orientation: Orientation,
    /// Forward: 1-based end position of the shortest k-complete prefix, per k.
    /// Reverse: 1-based start position of the shortest k-complete suffix.
    boundaries: Vec<usize>,
    /// `segments[k-1]` is the k-th segment, as it reads in the source word.
    segments: Vec<Sequence>,
    /// Terminal letter per segment; `None` when no candidate letter occurs in
    /// the segment (possible only on non-minimal inputs).
    terminals: Vec<Option<Letter>>,
    /// Letters outside the shortest n-complete prefix (forward) or suffix
    /// (reverse); empty for minimal supersequences.
    remainder: Sequence,
}

impl Segmentation {
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn segments(&self) -> &[Sequence] {
        &self.segments
    }

    pub fn segment(&self, k: usize) -> &Sequence {
        &self.segments[k - 1]
    }

    pub fn terminals(&self) -> &[Option<Letter>] {
        &self.terminals
    }

    pub fn remainder(&self) -> &Sequence {
        &self.remainder
    }

    pub fn segment_lengths(&self) -> Vec<usize> {
        self.segments.iter().map(Sequence::len).collect()
    }

    /// Cumulative segment lengths: the lengths of the shortest k-complete
    /// prefixes (forward) or suffixes (reverse).
    pub fn prefix_lengths(&self) -> Vec<usize> {
        self.segments
            .iter()
            .scan(0usize, |acc, s| {
                *acc += s.len();
                Some(*acc)
            })
            .collect()
    }

    /// Letters occurring at least twice in some segment:
    /// `(segment index, letter, count)`.
    pub fn duplicate_report(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            for (letter, count) in duplicates(seg) {
                out.push((i + 1, letter, count));
            }
        }
        out
    }
}

/// Letters occurring at least twice in the word, with their counts,
/// in letter order.
pub fn duplicates(w: &Sequence) -> Vec<(Letter, usize)> {
    w.frequencies().entries().filter(|&(_, c)| c >= 2).collect()
}

fn assert_wellformed(seg: &Segmentation) {
    // Segments are never empty, and the element at the cut end of each
    // segment — the last for forward segments, the first for reverse ones,
    // which are stored mirrored back into source order — is unique within
    // it. Both hold for every supersequence by minimality of the cut points.
    debug_assert!(seg.segments.iter().all(|s| !s.is_empty()));
    debug_assert!(seg.segments.iter().all(|s| {
        let pivot = match seg.orientation {
            Orientation::Forward => *s.letters().last().unwrap(),
            Orientation::Reverse => s.letters()[0],
        };
        s.frequency(pivot) == 1
    }));
}

/// Forward segmentation. Errors unless `w` is a supersequence.
pub fn segment(w: &Sequence) -> Result<Segmentation> {
    let n = w.n();
    let idx = Index::new(w);
    if !idx.is_supersequence() {
        return Err(Error::NotSupersequence { n });
    }
    let mut boundaries = Vec::with_capacity(n);
    for k in 1..=n {
        boundaries.push(
            idx.min_complete_prefix(k)
                .expect("n-complete implies k-complete"),
        );
    }
    let mut segments = Vec::with_capacity(n);
    let mut prev = 0usize;
    for &b in &boundaries {
        segments.push(
            w.substring(prev as isize + 1, b as isize)
                .expect("boundaries are increasing and in range"),
        );
        prev = b;
    }
    let remainder = if prev == w.len() {
        Sequence::empty(w.alphabet())
    } else {
        w.substring(prev as isize + 1, w.len() as isize)
            .expect("in range")
    };
    let terminals = terminals_relaxed(&segments, w.alphabet().full_set());
    let seg = Segmentation {
        orientation: Orientation::Forward,
        boundaries,
        segments,
        terminals,
        remainder,
    };
    assert_wellformed(&seg);
    Ok(seg)
}

/// Reverse segmentation: segment the reversed word, then mirror everything
/// back into source coordinates. The k-th reverse segment is a substring of
/// `w` (read left to right); its boundary is the 1-based start of the
/// shortest k-complete suffix.
pub fn reverse_segment(w: &Sequence) -> Result<Segmentation> {
    let rev = w.reversed();
    let f = segment(&rev)?;
    let len = w.len();
    let boundaries: Vec<usize> = f.boundaries.iter().map(|b| len - b + 1).collect();
    let segments: Vec<Sequence> = f.segments.iter().map(Sequence::reversed).collect();
    let remainder = f.remainder.reversed();
    let seg = Segmentation {
        orientation: Orientation::Reverse,
        boundaries,
        segments,
        terminals: f.terminals,
        remainder,
    };
    assert_wellformed(&seg);
    Ok(seg)
}

/// Terminal letter of each segment under the rule: candidates are the letters
/// not already used as terminals; among candidates occurring in the segment,
/// take the one whose first occurrence in the segment is latest. `None` when
/// no candidate occurs.
fn terminals_relaxed(segments: &[Sequence], alphabet_set: LetterSet) -> Vec<Option<Letter>> {
    let mut used = LetterSet::EMPTY;
    let mut out = Vec::with_capacity(segments.len());
    for seg in segments {
        let mut best: Option<(usize, Letter)> = None;
        for a in alphabet_set.iter() {
            if used.contains(a) {
                continue;
            }
            if let Some(p) = seg.first_occurrence(a) {
                if best.is_none_or(|(bp, _)| p > bp) {
                    best = Some((p, a));
                }
            }
        }
        match best {
            Some((_, a)) => {
                used.insert(a);
                out.push(Some(a));
            }
            None => out.push(None),
        }
    }
    out
}

/// Terminal letters of a segment list (which may cover only the first few
/// segments of a longer segmentation). Errors if some segment has no
/// candidate letter occurring in it.
pub fn terminal_letters(segments: &[Sequence]) -> Result<Vec<Letter>> {
    let alphabet = match segments.first() {
        Some(s) => s.alphabet(),
        None => return Err(Error::Domain("empty segment list".into())),
    };
    if segments.iter().any(|s| s.alphabet() != alphabet) {
        return Err(Error::Domain("segments must share one alphabet".into()));
    }
    let relaxed = terminals_relaxed(segments, alphabet.full_set());
    relaxed
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or(Error::UndefinedTerminal { segment: i + 1 }))
        .collect()
}

/// The letter of `set` whose **first** occurrence in `w` is latest.
/// Every letter of `set` must occur in `w`.
pub fn last_appearing(w: &Sequence, set: LetterSet) -> Result<Letter> {
    if !set.is_subset_of(&w.alphabet().full_set()) {
        return Err(Error::Domain(format!(
            "letter set {set} is outside the alphabet {{1..{}}}",
            w.n()
        )));
    }
    if set.is_empty() {
        return Err(Error::Domain(
            "last-appearing letter of an empty set".into(),
        ));
    }
    let mut best: Option<(usize, Letter)> = None;
    for a in set.iter() {
        match w.first_occurrence(a) {
            Some(p) => {
                if best.is_none_or(|(bp, _)| p > bp) {
                    best = Some((p, a));
                }
            }
            None => {
                return Err(Error::MissingLetter {
                    letter: a,
                    place: "the word".into(),
                })
            }
        }
    }
    Ok(best.expect("set is nonempty").1)
}

/// The bold labeling: rank n goes to the letter appearing last in the whole
/// word (by first occurrence); each following rank r goes to the letter of
/// the remaining ones appearing last in the suffix after rank (r+1)'s anchor.
/// Anchors are absolute 1-based first-occurrence positions in `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoldLabeling {
    /// `letter_by_rank[r-1]` = the letter with bold rank r.
    letter_by_rank: Vec<Letter>,
    /// `anchor_by_rank[r-1]` = that letter's anchor position p_r.
    anchor_by_rank: Vec<usize>,
}

impl BoldLabeling {
    pub fn n(&self) -> usize {
        self.letter_by_rank.len()
    }

    pub fn letter_of_rank(&self, rank: usize) -> Letter {
        self.letter_by_rank[rank - 1]
    }

    pub fn anchor_of_rank(&self, rank: usize) -> usize {
        self.anchor_by_rank[rank - 1]
    }

    pub fn rank_of(&self, letter: Letter) -> Option<usize> {
        self.letter_by_rank
            .iter()
            .position(|&a| a == letter)
            .map(|i| i + 1)
    }

    /// `(rank, letter, anchor)` rows from rank n down to rank 1.
    pub fn rows(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        (1..=self.n())
            .rev()
            .map(|r| (r, self.letter_of_rank(r), self.anchor_of_rank(r)))
    }
}

/// Computes the bold labeling of `w`. Errors when some required letter does
/// not occur in the window the definition inspects (impossible for
/// supersequences, possible for arbitrary words).
pub fn bold_labels(w: &Sequence) -> Result<BoldLabeling> {
    let n = w.n();
    let mut letter_by_rank = vec![0 as Letter; n];
    let mut anchor_by_rank = vec![0usize; n];
    let mut remaining = w.alphabet().full_set();
    let mut from = 0usize; // 0-based start of the current window
    for rank in (1..=n).rev() {
        let mut best: Option<(usize, Letter)> = None;
        for a in remaining.iter() {
            let rel = w.letters()[from..].iter().position(|&x| x == a);
            match rel {
                Some(rel) => {
                    let abs = from + rel + 1;
                    if best.is_none_or(|(bp, _)| abs > bp) {
                        best = Some((abs, a));
                    }
                }
                None => {
                    return Err(Error::MissingLetter {
                        letter: a,
                        place: format!("the window after position {from}"),
                    })
                }
            }
        }
        let (anchor, letter) = best.expect("remaining is nonempty for rank >= 1");
        letter_by_rank[rank - 1] = letter;
        anchor_by_rank[rank - 1] = anchor;
        remaining.remove(letter);
        from = anchor; // next window starts right after the anchor
    }
    Ok(BoldLabeling {
        letter_by_rank,
        anchor_by_rank,
    })
}

/// The terminal letter of the first segment: the letter whose first
/// occurrence in `w` is latest. Defined for every supersequence, where it
/// always carries bold rank n.
pub fn head_terminal(w: &Sequence) -> Result<Letter> {
    let n = w.n();
    if n == 0 {
        return Err(Error::Domain("empty alphabet has no head terminal".into()));
    }
    if !Index::new(w).is_supersequence() {
        return Err(Error::NotSupersequence { n });
    }
    last_appearing(w, w.alphabet().full_set())
}

/// The removal operation: drop the first segment entirely, plus every later
/// occurrence of the head terminal letter. The result is relabeled onto
/// `{1..n-1}` preserving letter order, and is always a supersequence over the
/// reduced alphabet. Exactly `f(w, x) + |s_1| - 1` elements are deleted,
/// where x is the head terminal and s_1 the first segment.
pub fn remove_head_terminal(w: &Sequence) -> Result<Sequence> {
    let n = w.n();
    if n == 0 {
        return Err(Error::Domain(
            "cannot remove from the empty alphabet".into(),
        ));
    }
    let idx = Index::new(w);
    if !idx.is_supersequence() {
        return Err(Error::NotSupersequence { n });
    }
    let b1 = idx
        .min_complete_prefix(1)
        .expect("supersequence is 1-complete");
    let head = w.letters()[b1 - 1];
    let reduced = crate::sequence::Alphabet::new(n - 1).expect("n <= 16");
    let elems: Vec<Letter> = w.letters()[b1..]
        .iter()
        .copied()
        .filter(|&a| a != head)
        .map(|a| if a > head { a - 1 } else { a })
        .collect();
    Sequence::new(reduced, elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness;
    use crate::sequence::Alphabet;

    fn seq(letters: &[Letter]) -> Sequence {
        Sequence::from_letters(letters).unwrap()
    }

    fn seq_n(n: usize, letters: &[Letter]) -> Sequence {
        Sequence::new(Alphabet::new(n).unwrap(), letters.to_vec()).unwrap()
    }

    #[test]
    fn forward_segmentation_of_the_three_letter_example() {
        let w = seq(&[1, 2, 3, 1, 2, 1, 3]);
        let s = segment(&w).unwrap();
        assert_eq!(s.boundaries(), &[3, 5, 7]);
        assert_eq!(s.segment(1).letters(), &[1, 2, 3]);
        assert_eq!(s.segment(2).letters(), &[1, 2]);
        assert_eq!(s.segment(3).letters(), &[1, 3]);
        assert_eq!(s.terminals(), &[Some(3), Some(2), Some(1)]);
        assert!(s.remainder().is_empty());
        assert_eq!(s.prefix_lengths(), vec![3, 5, 7]);
    }

    #[test]
    fn segmentation_is_deterministic() {
        let w = seq(&[1, 2, 3, 1, 2, 1, 3]);
        assert_eq!(segment(&w).unwrap(), segment(&w).unwrap());
    }

    #[test]
    fn non_minimal_words_leave_a_remainder() {
        let w = seq(&[1, 2, 3, 1, 2, 1, 3, 1]);
        let s = segment(&w).unwrap();
        assert_eq!(s.boundaries(), &[3, 5, 7]);
        assert_eq!(s.remainder().letters(), &[1]);
    }

    #[test]
    fn segment_rejects_non_supersequences() {
        let w = seq(&[1, 2, 3, 1, 2, 1]);
        assert!(matches!(segment(&w), Err(Error::NotSupersequence { n: 3 })));
    }

    #[test]
    fn reverse_segmentation_of_the_three_letter_example() {
        let w = seq(&[1, 2, 3, 1, 2, 1, 3]);
        let s = reverse_segment(&w).unwrap();
        assert_eq!(s.segment(1).letters(), &[2, 1, 3]);
        assert_eq!(s.segment(2).letters(), &[3, 1]);
        assert_eq!(s.segment(3).letters(), &[1, 2]);
        assert_eq!(s.boundaries(), &[5, 3, 1]);
        assert!(s.remainder().is_empty());
    }

    #[test]
    fn reverse_boundaries_match_a_direct_suffix_scan() {
        // Oracle: the k-th reverse boundary is the largest start s such that
        // w[s..] is k-complete, found by scanning suffixes directly.
        for letters in [
            vec![1, 2, 3, 1, 2, 1, 3],
            vec![1, 1, 2, 3, 1, 2, 1, 3],
            vec![2, 1, 2, 1, 2],
            vec![1, 2, 1, 3, 1, 2, 1, 2, 3],
        ] {
            let w = seq(&letters);
            let s = reverse_segment(&w).unwrap();
            for k in 1..=w.n() {
                let direct = (1..=w.len())
                    .rev()
                    .find(|&start| {
                        let suffix = w.substring(start as isize, -1).unwrap();
                        completeness::naive::is_k_complete(&suffix, k).unwrap()
                    })
                    .expect("w is a supersequence");
                assert_eq!(s.boundaries()[k - 1], direct, "word {letters:?} k {k}");
            }
        }
    }

    #[test]
    fn last_appearing_picks_latest_first_occurrence() {
        let w = seq(&[1, 2, 3, 4, 5, 4, 1, 3]);
        let set = LetterSet::from_letters(&[1, 2, 4]);
        assert_eq!(last_appearing(&w, set).unwrap(), 4);
        assert_eq!(last_appearing(&w, w.alphabet().full_set()).unwrap(), 5);
        let missing = LetterSet::from_letters(&[1, 6]);
        assert!(matches!(
            last_appearing(&seq_n(6, &[1, 2, 3]), missing),
            Err(Error::MissingLetter { letter: 6, .. })
        ));
        assert!(matches!(
            last_appearing(&w, LetterSet::EMPTY),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bold_labels_of_the_three_letter_example() {
        let b = bold_labels(&seq(&[1, 2, 3, 1, 2, 1, 3])).unwrap();
        assert_eq!(b.letter_of_rank(3), 3);
        assert_eq!(b.anchor_of_rank(3), 3);
        assert_eq!(b.letter_of_rank(2), 2);
        assert_eq!(b.anchor_of_rank(2), 5);
        assert_eq!(b.letter_of_rank(1), 1);
        assert_eq!(b.anchor_of_rank(1), 6);
        assert_eq!(b.rank_of(3), Some(3));
    }

    #[test]
    fn bold_labels_use_absolute_anchor_positions() {
        // 1 2 1 3 1 3 2 1 3: rank 3 -> letter 3 at 4; the next window is the
        // suffix from position 5, where 2 first appears at absolute 7.
        let b = bold_labels(&seq(&[1, 2, 1, 3, 1, 3, 2, 1, 3])).unwrap();
        assert_eq!((b.letter_of_rank(3), b.anchor_of_rank(3)), (3, 4));
        assert_eq!((b.letter_of_rank(2), b.anchor_of_rank(2)), (2, 7));
        assert_eq!((b.letter_of_rank(1), b.anchor_of_rank(1)), (1, 8));
    }

    #[test]
    fn bold_labels_error_when_a_window_misses_a_letter() {
        assert!(matches!(
            bold_labels(&seq(&[2, 1])),
            Err(Error::MissingLetter { letter: 2, .. })
        ));
    }

    #[test]
    fn terminal_letters_of_a_partial_eight_letter_segment_list() {
        let segs = vec![
            seq_n(8, &[1, 2, 3, 4, 5, 6, 7, 8]),
            seq_n(8, &[1, 2, 3, 4, 5, 6, 7]),
            seq_n(8, &[1, 8, 2, 3, 4, 5, 6]),
            seq_n(8, &[1, 8, 2, 3, 4, 5, 7]),
        ];
        assert_eq!(terminal_letters(&segs).unwrap(), vec![8, 7, 6, 5]);
    }

    #[test]
    fn terminal_letters_can_be_undefined() {
        let segs = vec![seq_n(2, &[1, 2]), seq_n(2, &[2])];
        assert!(matches!(
            terminal_letters(&segs),
            Err(Error::UndefinedTerminal { segment: 2 })
        ));
        assert!(matches!(terminal_letters(&[]), Err(Error::Domain(_))));
    }

    #[test]
    fn head_terminal_is_the_last_new_letter() {
        assert_eq!(head_terminal(&seq(&[1, 2, 3, 1, 2, 1, 3])).unwrap(), 3);
        assert_eq!(head_terminal(&seq(&[2, 1, 2])).unwrap(), 1);
        assert!(matches!(
            head_terminal(&seq(&[1, 2, 3])),
            Err(Error::NotSupersequence { n: 3 })
        ));
    }

    #[test]
    fn removal_drops_first_segment_and_head_occurrences() {
        let w = seq(&[1, 2, 3, 1, 2, 1, 3]);
        let r = remove_head_terminal(&w).unwrap();
        assert_eq!(r.letters(), &[1, 2, 1]);
        assert_eq!(r.n(), 2);
        assert!(completeness::is_supersequence(&r));
        // deleted = f(w, head) + |s_1| - 1
        assert_eq!(w.len() - r.len(), w.frequency(3) + 3 - 1);
    }

    #[test]
    fn removal_relabels_when_the_head_is_not_the_top_letter() {
        let w = seq(&[2, 1, 2]); // first segment 2 1, head terminal 1
        let r = remove_head_terminal(&w).unwrap();
        assert_eq!(r.letters(), &[1]); // the surviving 2 becomes 1
        assert_eq!(r.n(), 1);
        assert!(completeness::is_supersequence(&r));
    }

    #[test]
    fn removal_reaches_the_empty_alphabet() {
        let w = seq(&[1]);
        let r = remove_head_terminal(&w).unwrap();
        assert_eq!(r.n(), 0);
        assert!(r.is_empty());
        assert!(completeness::is_supersequence(&r));
        assert!(matches!(remove_head_terminal(&r), Err(Error::Domain(_))));
    }

    #[test]
    fn duplicates_reports_letters_seen_twice_or_more() {
        assert_eq!(duplicates(&seq(&[1, 2, 1, 3, 1])), vec![(1, 3)]);
        assert_eq!(duplicates(&seq(&[1, 2, 3])), vec![]);
        let w = seq(&[1, 2, 3, 1, 2, 1, 3]);
        let s = segment(&w).unwrap();
        assert_eq!(s.duplicate_report(), vec![]);
    }
}
