//! Shared generators and blunt reference oracles for the integration
//! suites. Everything is seeded; no test here depends on ambient entropy.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superseq::completeness::{self, naive, Index};
use superseq::{constructions, segmentation, Alphabet, Letter, Sequence};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<Letter> {
    let mut p: Vec<Letter> = (1..=n as Letter).collect();
    p.shuffle(rng);
    p
}

/// A concatenation of n random permutations — every arrangement embeds by
/// taking its k-th letter from the k-th block, so this is a supersequence by
/// construction, with no engine in the loop — plus `extra` random letters
/// spliced in at random positions (insertions never break containment).
pub fn random_supersequence(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Sequence {
    let mut letters: Vec<Letter> = Vec::with_capacity(n * n + extra);
    for _ in 0..n {
        letters.extend(random_permutation(rng, n));
    }
    for _ in 0..extra {
        let pos = rng.random_range(0..=letters.len());
        letters.insert(pos, rng.random_range(1..=n as Letter));
    }
    Sequence::from_letters(&letters).expect("letters stay in range")
}

/// Uniform random word over exactly this alphabet (letters may be missing).
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Sequence {
    let alphabet = Alphabet::new(n).expect("supported size");
    let letters: Vec<Letter> = (0..len)
        .map(|_| rng.random_range(1..=n as Letter))
        .collect();
    Sequence::new(alphabet, letters).expect("letters stay in range")
}

/// Random single-letter deletions, accepted whenever containment survives;
/// drives words toward (not necessarily all the way to) minimal shapes.
pub fn thinned(rng: &mut ChaCha8Rng, w: &Sequence, attempts: usize) -> Sequence {
    let mut letters = w.letters().to_vec();
    for _ in 0..attempts {
        if letters.len() <= 1 {
            break;
        }
        let i = rng.random_range(0..letters.len());
        let mut candidate = letters.clone();
        candidate.remove(i);
        let c = Sequence::new(w.alphabet(), candidate).expect("alphabet unchanged");
        if completeness::is_supersequence(&c) {
            letters.remove(i);
        }
    }
    Sequence::new(w.alphabet(), letters).expect("alphabet unchanged")
}

/// Every canonical word (letters numbered by first occurrence) of exactly
/// this length that uses exactly n distinct letters. Blunt recursion, meant
/// for cross-checking the search at toy sizes.
pub fn canonical_words_exact(n: usize, len: usize) -> Vec<Sequence> {
    let mut out = Vec::new();
    let mut prefix: Vec<Letter> = Vec::with_capacity(len);
    fn go(n: usize, len: usize, used: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Sequence>) {
        if prefix.len() == len {
            if used == n {
                out.push(Sequence::from_letters(prefix).expect("in range"));
            }
            return;
        }
        // Canonical words introduce letters in order: the next letter is
        // one of the used ones or the single next fresh letter.
        let limit = (used + 1).min(n);
        for a in 1..=limit as Letter {
            prefix.push(a);
            go(n, len, used.max(a as usize), prefix, out);
            prefix.pop();
        }
    }
    go(n, len, 0, &mut prefix, &mut out);
    out
}

/// Minimum supersequence length over n letters by blunt enumeration of all
/// canonical words up to `max_len`, with the witnesses realizing it.
/// Containment is decided by the naive engine only.
pub fn brute_min_length(n: usize, max_len: usize) -> Option<(usize, Vec<Sequence>)> {
    for len in 1..=max_len {
        let hits: Vec<Sequence> = canonical_words_exact(n, len)
            .into_iter()
            .filter(naive::is_supersequence)
            .collect();
        if !hits.is_empty() {
            return Some((len, hits));
        }
    }
    None
}

/// How many words the battery feeds through every law for a given total
/// budget: the split across alphabet sizes 1..=5.
fn battery_split(total: usize) -> [usize; 5] {
    let per = total / 5;
    let mut split = [per; 5];
    split[4] += total - per * 5;
    split
}

/// Runs `total` seeded random supersequences (alphabets 1..=5) through the
/// whole law set: engine agreement, segmentation shape, the mirror law,
/// pruning, labeling, and the removal operation. Returns the first
/// violation as a message naming the word.
pub fn structure_battery(total: usize, seed: u64) -> Result<(), String> {
    let mut rng = rng(seed);
    let split = battery_split(total);
    let mut batch_index = 0usize;
    for (n, &count) in (1..=5).zip(&split) {
        for _ in 0..count {
            let extra = rng.random_range(0..=2 * n);
            let raw = random_supersequence(&mut rng, n, extra);
            let w = match batch_index % 3 {
                0 => raw,
                1 => thinned(&mut rng, &raw, 2 * n),
                _ => {
                    let len = raw.len();
                    thinned(&mut rng, &raw, len)
                }
            };
            check_word_laws(&w, batch_index).map_err(|e| format!("word {}: {}", w, e))?;
            batch_index += 1;
        }
    }
    Ok(())
}

fn check_word_laws(w: &Sequence, batch_index: usize) -> Result<(), String> {
    let n = w.n();
    let idx = Index::new(w);

    // Engine agreement, on the word itself and on a prefix that may or may
    // not keep containment.
    if !idx.is_supersequence() {
        return Err("memoized engine rejects a word built as a supersequence".into());
    }
    if !naive::is_supersequence(w) {
        return Err("naive engine rejects a word built as a supersequence".into());
    }
    let cut = (batch_index % (w.len() + 1)).min(w.len());
    let prefix = w.prefix(cut).expect("cut in range");
    if naive::is_supersequence(&prefix) != Index::new(&prefix).is_supersequence() {
        return Err(format!("engines disagree on prefix of length {}", cut));
    }
    for k in 1..=n {
        let naive_k = naive::is_k_complete(w, k).expect("k in range");
        let fast_k = idx.is_k_complete(k).expect("k in range");
        if naive_k != fast_k {
            return Err(format!("engines disagree on {}-completeness", k));
        }
    }

    // Segmentation shape: cuts increase, segments are non-empty with a
    // unique last letter, and the pieces reassemble the word.
    let seg = segmentation::segment(w).map_err(|e| format!("segmentation failed: {}", e))?;
    if seg.boundaries().len() != n || seg.segments().len() != n {
        return Err("segmentation must produce one segment per letter".into());
    }
    if !seg.boundaries().windows(2).all(|p| p[0] < p[1]) {
        return Err(format!("boundaries not increasing: {:?}", seg.boundaries()));
    }
    for (i, s) in seg.segments().iter().enumerate() {
        if s.is_empty() {
            return Err(format!("segment {} is empty", i + 1));
        }
        let last = *s.letters().last().expect("non-empty");
        if s.frequency(last) != 1 {
            return Err(format!(
                "segment {} repeats its last letter {}",
                i + 1,
                last
            ));
        }
    }
    let mut rebuilt: Vec<Letter> = Vec::with_capacity(w.len());
    for s in seg.segments() {
        rebuilt.extend_from_slice(s.letters());
    }
    rebuilt.extend_from_slice(seg.remainder().letters());
    if rebuilt != w.letters() {
        return Err("segments plus remainder do not reassemble the word".into());
    }
    // Boundary minimality against the engine's own index is definitional;
    // cross-check the first boundary against the naive engine on a sample.
    if batch_index.is_multiple_of(97) {
        let naive_b1 = naive::min_complete_prefix(w, 1).expect("supersequence");
        if naive_b1 != seg.boundaries()[0] {
            return Err("naive engine disputes the first boundary".into());
        }
    }

    // Mirror law: reverse boundaries mark shortest complete suffixes, and
    // the mirrored pieces reassemble the word from the right.
    let rseg = segmentation::reverse_segment(w).map_err(|e| format!("reverse failed: {}", e))?;
    if !rseg.boundaries().windows(2).all(|p| p[0] > p[1]) {
        return Err(format!(
            "reverse boundaries not decreasing: {:?}",
            rseg.boundaries()
        ));
    }
    let mut rebuilt: Vec<Letter> = Vec::with_capacity(w.len());
    rebuilt.extend_from_slice(rseg.remainder().letters());
    for s in rseg.segments().iter().rev() {
        rebuilt.extend_from_slice(s.letters());
    }
    if rebuilt != w.letters() {
        return Err("reverse segments do not reassemble the word".into());
    }
    if batch_index.is_multiple_of(11) {
        for (k, &start) in (1..=n).zip(rseg.boundaries()) {
            let suffix = w
                .substring(start as isize, w.len() as isize)
                .expect("boundary in range");
            if !Index::new(&suffix).is_k_complete(k).expect("k in range") {
                return Err(format!(
                    "suffix at reverse boundary {} is not {}-complete",
                    start, k
                ));
            }
            if start < w.len() {
                let shorter = w
                    .substring(start as isize + 1, w.len() as isize)
                    .expect("in range");
                if Index::new(&shorter).is_k_complete(k).expect("k in range") {
                    return Err(format!(
                        "reverse boundary {} is not minimal for k = {}",
                        start, k
                    ));
                }
            }
        }
    }

    // Pruning: output stays a supersequence and a subsequence of the input;
    // on a sample, verify no single further deletion survives.
    let pruned = constructions::greedy_prune(w).map_err(|e| format!("prune failed: {}", e))?;
    if !Index::new(&pruned).is_supersequence() {
        return Err("pruned word lost containment".into());
    }
    if !w.contains_subsequence(pruned.letters()) {
        return Err("pruned word is not a subsequence of the input".into());
    }
    if batch_index.is_multiple_of(53) {
        for i in 0..pruned.len() {
            let mut shorter = pruned.letters().to_vec();
            shorter.remove(i);
            let c = Sequence::new(w.alphabet(), shorter).expect("alphabet unchanged");
            if Index::new(&c).is_supersequence() {
                return Err(format!(
                    "prune left a deletable letter at position {}",
                    i + 1
                ));
            }
        }
    }

    // Rank labeling, when defined: distinct letters, anchors marching right.
    if let Ok(bold) = segmentation::bold_labels(w) {
        let rows: Vec<(usize, Letter, usize)> = bold.rows().collect();
        for pair in rows.windows(2) {
            if pair[0].2 >= pair[1].2 {
                return Err(format!("bold anchors do not increase: {:?}", rows));
            }
        }
        for (rank, letter, _) in &rows {
            if bold.rank_of(*letter) != Some(*rank) {
                return Err("rank_of disagrees with rows".into());
            }
        }
    }

    // Removal operation: drops to n-1 letters, keeps containment, and
    // deletes exactly f(head) + |s1| - 1 letters.
    if n >= 2 {
        let head = segmentation::head_terminal(w).map_err(|e| format!("head: {}", e))?;
        let expected = w.frequency(head) + seg.segment(1).len() - 1;
        let reduced =
            segmentation::remove_head_terminal(w).map_err(|e| format!("removal: {}", e))?;
        if reduced.n() != n - 1 {
            return Err(format!(
                "removal left {} letters, expected {}",
                reduced.n(),
                n - 1
            ));
        }
        if w.len() - reduced.len() != expected {
            return Err(format!(
                "removal deleted {} letters, expected {}",
                w.len() - reduced.len(),
                expected
            ));
        }
        if !Index::new(&reduced).is_supersequence() {
            return Err("removal output lost containment".into());
        }
    }

    Ok(())
}
