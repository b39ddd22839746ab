//! Property suites: text round-trips, canonical form, engine agreement on
//! arbitrary words, and a ten-thousand-word seeded battery of the
//! structural laws (segmentation shape, the mirror law, pruning, labeling,
//! and the removal operation).

mod common;

use proptest::prelude::*;
use superseq::completeness::{naive, Index};
use superseq::{Alphabet, Sequence};

/// The workhorse: ten thousand seeded random supersequences over alphabets
/// 1..=5, each run through every structural law plus engine agreement.
/// Any violation fails with the offending word in the message.
#[test]
fn ten_thousand_word_battery() {
    common::structure_battery(10_000, 20260819).unwrap();
}

proptest! {
    #[test]
    fn parse_format_round_trip(raw in prop::collection::vec(1u8..=8, 1..40)) {
        let w = Sequence::from_letters(&raw).unwrap();
        let again = Sequence::parse(&w.format()).unwrap();
        prop_assert_eq!(again.letters(), w.letters());
        prop_assert_eq!(again.n(), w.n());
    }

    #[test]
    fn canonicalization_is_idempotent(raw in prop::collection::vec(1u8..=6, 1..30)) {
        let w = Sequence::from_letters(&raw).unwrap();
        let c = w.canonicalized();
        prop_assert!(c.is_canonical());
        let twice = c.canonicalized();
        prop_assert_eq!(twice.letters(), c.letters());
        prop_assert_eq!(c.len(), w.len());
        // Relabeling permutes letters, so the frequency multiset survives.
        let mut before = w.frequencies().multiset();
        let mut after = c.frequencies().multiset();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
    }

    /// The memoized index against the blunt enumerator, on words that are
    /// mostly *not* complete — the battery only feeds it supersequences.
    #[test]
    fn engines_agree_on_arbitrary_words(raw in prop::collection::vec(1u8..=4, 0..14)) {
        let w = Sequence::new(Alphabet::new(4).unwrap(), raw).unwrap();
        let idx = Index::new(&w);
        prop_assert_eq!(naive::is_supersequence(&w), idx.is_supersequence());
        for k in 1..=4 {
            prop_assert_eq!(
                naive::is_k_complete(&w, k).unwrap(),
                idx.is_k_complete(k).unwrap()
            );
            match (naive::min_complete_prefix(&w, k), idx.min_complete_prefix(k)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "engines disagree: {:?} vs {:?}", a, b),
            }
        }
    }

    #[test]
    fn completeness_level_is_the_largest_complete_k(
        raw in prop::collection::vec(1u8..=4, 0..14)
    ) {
        let w = Sequence::new(Alphabet::new(4).unwrap(), raw).unwrap();
        let level = Index::new(&w).completeness_level();
        let expected = (1..=4)
            .take_while(|&k| naive::is_k_complete(&w, k).unwrap())
            .last()
            .unwrap_or(0);
        prop_assert_eq!(level, expected);
    }
}
