//! Exact minimum-length search and exhaustive enumeration of minimal
//! supersequences, working up to letter relabeling.
//!
//! The search explores *canonical* words only — letters are numbered by first
//! occurrence, so each relabeling class is visited once — and runs iterative
//! deepening on the target length: every length below the answer is fully
//! refuted before the answer is accepted. Refutation rounds prune with three
//! admissible floors (each valid for **every** supersequence, so pruning can
//! never hide a witness):
//!
//! * every completeness level still missing needs at least one more element;
//! * after the shortest c-complete prefix ends at b_c, reaching level j > c
//!   takes at least n−j+1 further elements per level — the permutation
//!   completed exactly at b_{j−1} forces all other letters into segment j;
//! * for n ≥ 4 every supersequence, minimal or not, has length at least
//!   (4n−4) + (n−4)(n−3)/2: minimum-sized ones obey the 4n−4 floor on their
//!   first four segments, and the rest are longer than the minimum.
//!
//! States that provably cannot finish within their remaining budget are
//! memoized by their full progress signature (the per-permutation greedy
//! frontier, which also determines the set of letters used so far), so a
//! revisit through a different prefix is cut immediately. The signature is
//! compared in full on lookup — hash collisions cannot cause false pruning.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::Serialize;

use crate::completeness::Index;
use crate::constructions;
use crate::error::{Error, Result};
use crate::sequence::{Alphabet, Letter, Sequence};

/// Largest alphabet the exact search accepts; beyond this even bracket
/// reporting is pointless at desk scale.
pub const MAX_SEARCH_ALPHABET: usize = 8;

/// Ceiling on memoized refutation states, to bound memory on long runs.
const MEMO_CAP: usize = 2_000_000;

/// Node cap for each witness-tightening round before the refutation sweep.
const DESCENT_NODE_CAP: u64 = 250_000;

/// How often (in expanded nodes) the wall-clock deadline is polled.
const TIME_CHECK_MASK: u64 = 0xFFF;

/// Limits on a search run. Node limits are exact and deterministic; time
/// limits are polled periodically and make outcomes machine-dependent.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            max_seconds: None,
        }
    }

    pub fn seconds(max_seconds: f64) -> Budget {
        Budget {
            max_nodes: None,
            max_seconds: Some(max_seconds),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Enables the progress-signature memo. Disabling it forces every state
    /// to be re-explored; results must not change, only node counts.
    pub dominance: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            dominance: true,
        }
    }
}

/// Result of a minimum-length run.
///
/// `exhausted` means optimality was proven: every shorter length was refuted
/// and `witness` realizes `min_length = lower_bound = upper_bound`. A
/// budget-truncated run leaves `min_length` empty and reports the bracket
/// `lower_bound ≤ answer ≤ upper_bound`, with `witness` realizing the upper
/// end.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub exhausted: bool,
    pub min_length: Option<usize>,
    pub witness: Option<Sequence>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub nodes_expanded: u64,
}

fn check_alphabet(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("search needs at least one letter".into()));
    }
    if n > MAX_SEARCH_ALPHABET {
        return Err(Error::Unsupported(format!(
            "exact search handles up to {MAX_SEARCH_ALPHABET} letters; n = {n} exceeds desk scale"
        )));
    }
    Ok(())
}

fn tri(k: usize) -> usize {
    k * (k + 1) / 2
}

/// Floor on the **total** length of any supersequence extending a state with
/// completeness level `c`, whose shortest c-complete prefix ends at `b_c`.
fn total_floor(n: usize, c: usize, b_c: usize) -> usize {
    let mut floor = b_c + tri(n - c);
    if n >= 4 {
        floor = floor.max(4 * n - 4 + tri(n - 4));
    }
    floor
}

/// Admissible lower bound on how many more elements a canonical partial word
/// needs before it can become a supersequence; 0 once it already is one.
/// Never overestimates, which the exact search relies on.
pub fn length_lower_bound(n: usize, prefix: &Sequence) -> Result<usize> {
    check_alphabet(n)?;
    if prefix.n() != n {
        return Err(Error::Domain(format!(
            "prefix is over {{1..{}}}, expected {{1..{n}}}",
            prefix.n()
        )));
    }
    if !prefix.is_canonical() {
        return Err(Error::Domain(
            "prefix must be canonical (letters numbered by first occurrence)".into(),
        ));
    }
    let idx = Index::new(prefix);
    let c = idx.completeness_level();
    let b_c = if c == 0 {
        0
    } else {
        idx.min_complete_prefix(c)
            .expect("level c implies c-complete")
    };
    let deficit = n - c;
    let by_floor = total_floor(n, c, b_c).saturating_sub(prefix.len());
    Ok(deficit.max(by_floor))
}

enum Walk {
    Found,
    Done,
    Abort,
}

enum RoundResult {
    Found(Vec<Letter>),
    Refuted,
    Budget,
}

enum Mode {
    Decision,
    Enumerate,
}

struct Dfs {
    n: usize,
    nperms: usize,
    /// All n! permutations, flattened with stride n, in lexicographic order.
    perms: Vec<Letter>,
    /// Greedy frontier per permutation: length of its longest embedded prefix.
    ptr: Vec<u8>,
    /// hist[v] = number of permutations whose frontier is v.
    hist: Vec<u32>,
    /// Completeness level of the current word = min frontier.
    level: usize,
    /// b[k] = end of the shortest k-complete prefix, filled as levels are
    /// reached; only entries up to `level` are current.
    b: Vec<usize>,
    word: Vec<Letter>,
    used: usize,
    target: usize,
    mode: Mode,
    memo: Option<HashMap<Box<[u8]>, u32>>,
    sink: Vec<Sequence>,
    found: Option<Vec<Letter>>,
    nodes: u64,
    /// Lifetime node budget for the whole search.
    node_limit: u64,
    /// Effective limit for the current round: the lifetime budget, possibly
    /// tightened by a per-round cap. Hitting only the cap is not exhaustion.
    round_limit: u64,
    deadline: Option<Instant>,
    /// Set when the global budget (rather than a per-round cap) ran out.
    budget_exhausted: bool,
    /// Free list recycling the per-frame undo buffers.
    spare: Vec<Vec<u32>>,
}

impl Dfs {
    fn new(n: usize, dominance: bool, budget: &Budget) -> Dfs {
        let perms: Vec<Letter> = (1..=n as Letter).permutations(n).flatten().collect();
        let nperms = perms.len().checked_div(n).unwrap_or(0);
        Dfs {
            n,
            nperms,
            perms,
            ptr: vec![0; nperms],
            hist: vec![0; n + 1],
            level: 0,
            b: vec![0; n + 1],
            word: Vec::new(),
            used: 0,
            target: 0,
            mode: Mode::Decision,
            memo: dominance.then(HashMap::new),
            sink: Vec::new(),
            found: None,
            nodes: 0,
            node_limit: budget.max_nodes.unwrap_or(u64::MAX),
            round_limit: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget
                .max_seconds
                .map(|s| Instant::now() + Duration::from_secs_f64(s)),
            budget_exhausted: false,
            spare: Vec::new(),
        }
    }

    fn run(&mut self, target: usize, mode: Mode, round_cap: Option<u64>) -> RoundResult {
        self.ptr.fill(0);
        self.hist.fill(0);
        self.hist[0] = self.nperms as u32;
        self.level = 0;
        self.b.fill(0);
        self.word.clear();
        self.used = 0;
        self.target = target;
        self.mode = mode;
        self.found = None;
        self.round_limit = match round_cap {
            Some(cap) => self.node_limit.min(self.nodes.saturating_add(cap)),
            None => self.node_limit,
        };
        let walk = self.dfs();
        match walk {
            Walk::Found => RoundResult::Found(self.found.take().expect("witness recorded")),
            Walk::Done => RoundResult::Refuted,
            Walk::Abort => RoundResult::Budget,
        }
    }

    fn remaining_bound(&self) -> usize {
        let deficit = self.n - self.level;
        deficit.max(
            total_floor(self.n, self.level, self.b[self.level]).saturating_sub(self.word.len()),
        )
    }

    fn pack_signature(&self) -> Box<[u8]> {
        let mut sig = vec![0u8; self.nperms.div_ceil(2)];
        for (i, &p) in self.ptr.iter().enumerate() {
            sig[i / 2] |= p << (4 * (i % 2));
        }
        sig.into_boxed_slice()
    }

    fn push(&mut self, a: Letter) -> (Vec<u32>, usize, usize) {
        let mut advanced = self.spare.pop().unwrap_or_default();
        for i in 0..self.nperms {
            let t = self.ptr[i] as usize;
            if t < self.n && self.perms[i * self.n + t] == a {
                self.hist[t] -= 1;
                self.hist[t + 1] += 1;
                self.ptr[i] += 1;
                advanced.push(i as u32);
            }
        }
        self.word.push(a);
        let old_level = self.level;
        let old_used = self.used;
        self.used = self.used.max(a as usize);
        while self.level < self.n && self.hist[self.level] == 0 {
            self.level += 1;
            self.b[self.level] = self.word.len();
        }
        (advanced, old_level, old_used)
    }

    fn pop(&mut self, frame: (Vec<u32>, usize, usize)) {
        let (mut advanced, old_level, old_used) = frame;
        for &i in &advanced {
            let i = i as usize;
            let t = self.ptr[i] as usize;
            self.hist[t] -= 1;
            self.hist[t - 1] += 1;
            self.ptr[i] -= 1;
        }
        advanced.clear();
        self.spare.push(advanced);
        self.word.pop();
        self.level = old_level;
        self.used = old_used;
    }

    fn dfs(&mut self) -> Walk {
        if self.level == self.n {
            // The word embeds every permutation.
            match self.mode {
                Mode::Decision => {
                    self.found = Some(self.word.clone());
                    return Walk::Found;
                }
                Mode::Enumerate => {
                    debug_assert_eq!(self.word.len(), self.target);
                    let alphabet = Alphabet::new(self.n).expect("n <= 8");
                    self.sink.push(
                        Sequence::new(alphabet, self.word.clone()).expect("letters in range"),
                    );
                    return Walk::Done;
                }
            }
        }
        let len = self.word.len();
        if len + self.remaining_bound() > self.target {
            return Walk::Done;
        }
        let remaining = (self.target - len) as u32;
        let sig = self.memo.is_some().then(|| self.pack_signature());
        if let (Some(memo), Some(sig)) = (&self.memo, &sig) {
            if memo.get(sig.as_ref()).is_some_and(|&r| r >= remaining) {
                return Walk::Done;
            }
        }
        self.nodes += 1;
        if self.nodes > self.round_limit {
            if self.nodes > self.node_limit {
                self.budget_exhausted = true;
            }
            return Walk::Abort;
        }
        if self.nodes & TIME_CHECK_MASK == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.budget_exhausted = true;
                    return Walk::Abort;
                }
            }
        }

        // One pass over all frontiers yields, for each candidate letter, how
        // many permutations it advances. Letters advancing none are skipped:
        // they could be deleted from any completion without changing the
        // final frontier, so a shorter witness would exist — impossible at or
        // below the true minimum.
        let mut gains = [0u32; 17];
        for i in 0..self.nperms {
            let t = self.ptr[i] as usize;
            if t < self.n {
                gains[self.perms[i * self.n + t] as usize] += 1;
            }
        }
        let frontier = (self.used + 1).min(self.n);
        let mut kids = [(0u32, 0u8); 16];
        let mut k = 0;
        for a in 1..=frontier as Letter {
            if gains[a as usize] > 0 {
                kids[k] = (gains[a as usize], a);
                k += 1;
            }
        }
        // Most-progress-first ordering finds witnesses early; the letter
        // tiebreak keeps runs deterministic.
        kids[..k].sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));

        for &(_, a) in &kids[..k] {
            let frame = self.push(a);
            let walk = self.dfs();
            self.pop(frame);
            match walk {
                Walk::Found => return Walk::Found,
                Walk::Abort => return Walk::Abort,
                Walk::Done => {}
            }
        }

        // Every extension failed: no completion within `remaining` exists
        // from this frontier, whatever prefix produced it.
        if let (Some(memo), Some(sig)) = (&mut self.memo, sig) {
            if memo.len() < MEMO_CAP {
                let slot = memo.entry(sig).or_insert(0);
                *slot = (*slot).max(remaining);
            }
        }
        Walk::Done
    }
}

/// Baseline upper bound: the pruned block construction, relabeled canonical.
fn baseline(n: usize) -> Result<Sequence> {
    let blocks = constructions::blocks_construction(n)?;
    Ok(constructions::greedy_prune(&blocks)?.canonicalized())
}

/// Computes the exact minimum supersequence length over `n` letters, with a
/// canonical witness. Runs iterative deepening from an admissible lower
/// bound after tightening the baseline upper bound with capped witness
/// hunts; a spent budget yields `exhausted = false` and the proven bracket.
pub fn min_length(n: usize, options: &SearchOptions) -> Result<SearchOutcome> {
    check_alphabet(n)?;
    let mut ub_word = baseline(n)?;
    let mut ub = ub_word.len();
    let mut lb = length_lower_bound(n, &Sequence::empty(Alphabet::new(n)?))?;
    let mut dfs = Dfs::new(n, options.dominance, &options.budget);

    // Witness tightening: hunt for shorter words under a per-round node cap,
    // so a later budget exhaustion still reports a tight upper end.
    while ub > lb {
        match dfs.run(ub - 1, Mode::Decision, Some(DESCENT_NODE_CAP)) {
            RoundResult::Found(w) => {
                ub = w.len();
                ub_word = Sequence::new(Alphabet::new(n)?, w)?;
            }
            RoundResult::Refuted => {
                lb = ub;
            }
            RoundResult::Budget => break,
        }
    }

    // Refutation sweep upward from the lower bound.
    let mut answer = ub;
    let mut exhausted = true;
    let mut at_least = lb;
    for target in lb..ub {
        if dfs.budget_exhausted {
            exhausted = false;
            break;
        }
        match dfs.run(target, Mode::Decision, None) {
            RoundResult::Found(w) => {
                debug_assert_eq!(w.len(), target, "shorter lengths were refuted");
                answer = w.len();
                ub_word = Sequence::new(Alphabet::new(n)?, w)?;
                break;
            }
            RoundResult::Refuted => {
                at_least = target + 1;
            }
            RoundResult::Budget => {
                exhausted = false;
                at_least = target;
                break;
            }
        }
    }

    if exhausted {
        Ok(SearchOutcome {
            n,
            exhausted: true,
            min_length: Some(answer),
            witness: Some(ub_word),
            lower_bound: answer,
            upper_bound: answer,
            nodes_expanded: dfs.nodes,
        })
    } else {
        Ok(SearchOutcome {
            n,
            exhausted: false,
            min_length: None,
            witness: Some(ub_word),
            lower_bound: at_least,
            upper_bound: ub,
            nodes_expanded: dfs.nodes,
        })
    }
}

/// Enumerates every minimal supersequence over `n` letters, one canonical
/// representative per relabeling class, in deterministic search order.
///
/// Hard-guaranteed through n = 4; n = 5 must be opted into via `allow_long`
/// (expect minutes to hours), and larger alphabets are refused.
pub fn enumerate_minimal(n: usize, allow_long: bool) -> Result<Vec<Sequence>> {
    check_alphabet(n)?;
    if n > 5 {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration is supported for n <= 4 (n = 5 with the long-run flag); n = {n} is out of reach"
        )));
    }
    if n == 5 && !allow_long {
        return Err(Error::Unsupported(
            "enumeration at n = 5 takes a long run; pass the long-run flag to confirm".into(),
        ));
    }
    let outcome = min_length(n, &SearchOptions::default())?;
    let target = outcome.min_length.expect("unbudgeted run is exhaustive");
    // The memo must stay off here: a refutation cache built while *deciding*
    // would be sound, but enumeration is required to visit every witness
    // path, and fresh state keeps that property self-evident.
    let mut dfs = Dfs::new(n, false, &Budget::unlimited());
    match dfs.run(target, Mode::Enumerate, None) {
        RoundResult::Refuted => Ok(dfs.sink),
        RoundResult::Found(_) => unreachable!("enumeration does not early-return"),
        RoundResult::Budget => unreachable!("enumeration runs unbudgeted"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness;

    fn seq(letters: &[Letter]) -> Sequence {
        Sequence::from_letters(letters).unwrap()
    }

    #[test]
    fn lower_bound_for_empty_prefixes() {
        for (n, expected) in [(1, 1), (2, 3), (3, 6), (4, 12), (5, 17)] {
            let empty = Sequence::empty(Alphabet::new(n).unwrap());
            assert_eq!(length_lower_bound(n, &empty).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn lower_bound_vanishes_on_supersequences() {
        let w = seq(&[1, 2, 3, 1, 2, 1, 3]);
        assert_eq!(length_lower_bound(3, &w).unwrap(), 0);
    }

    #[test]
    fn lower_bound_is_admissible_mid_prefix() {
        // ⟨1,2,3⟩ completes to a supersequence with 4 more elements; the
        // bound must not claim more.
        let p = seq(&[1, 2, 3]);
        let bound = length_lower_bound(3, &p).unwrap();
        assert!(bound <= 4, "bound {bound} overestimates");
        assert!(bound >= 2);
    }

    #[test]
    fn lower_bound_validates_input() {
        let not_canonical = seq(&[2, 1, 2]);
        assert!(matches!(
            length_lower_bound(2, &not_canonical),
            Err(Error::Domain(_))
        ));
        let w = seq(&[1, 2, 1]);
        assert!(matches!(length_lower_bound(3, &w), Err(Error::Domain(_))));
        assert!(matches!(
            length_lower_bound(0, &seq(&[])),
            Err(Error::Domain(_))
        ));
        let empty9 = Sequence::empty(Alphabet::new(9).unwrap());
        assert!(matches!(
            length_lower_bound(9, &empty9),
            Err(Error::Unsupported(_))
        ));
    }

    fn assert_exact(outcome: &SearchOutcome, n: usize, min: usize) {
        assert!(outcome.exhausted);
        assert_eq!(outcome.min_length, Some(min));
        assert_eq!(outcome.lower_bound, min);
        assert_eq!(outcome.upper_bound, min);
        let w = outcome.witness.as_ref().unwrap();
        assert_eq!(w.len(), min);
        assert_eq!(w.n(), n);
        assert!(w.is_canonical());
        assert!(completeness::is_supersequence(w));
    }

    #[test]
    fn tiny_alphabets_are_solved_exactly() {
        for (n, min) in [(1, 1), (2, 3), (3, 7), (4, 12)] {
            let outcome = min_length(n, &SearchOptions::default()).unwrap();
            assert_exact(&outcome, n, min);
        }
    }

    #[test]
    fn dominance_toggle_changes_nothing_but_work() {
        let with = min_length(3, &SearchOptions::default()).unwrap();
        let without = min_length(
            3,
            &SearchOptions {
                dominance: false,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(with.min_length, without.min_length);
        assert_eq!(with.witness, without.witness);
    }

    #[test]
    fn spent_budget_reports_a_bracket() {
        let outcome = min_length(
            4,
            &SearchOptions {
                budget: Budget::nodes(1),
                dominance: true,
            },
        )
        .unwrap();
        assert!(!outcome.exhausted);
        assert_eq!(outcome.min_length, None);
        assert!(outcome.lower_bound >= 12);
        assert!(outcome.upper_bound >= outcome.lower_bound);
        let w = outcome.witness.unwrap();
        assert_eq!(w.len(), outcome.upper_bound);
        assert!(completeness::is_supersequence(&w));
    }

    #[test]
    fn search_rejects_out_of_range_alphabets() {
        assert!(matches!(
            min_length(0, &SearchOptions::default()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            min_length(9, &SearchOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn enumeration_of_the_smallest_alphabets() {
        let one = enumerate_minimal(1, false).unwrap();
        assert_eq!(one, vec![seq(&[1])]);
        let two = enumerate_minimal(2, false).unwrap();
        assert_eq!(two, vec![seq(&[1, 2, 1])]);
    }

    #[test]
    fn three_letter_enumeration_matches_the_known_profile() {
        let words = enumerate_minimal(3, false).unwrap();
        assert!(!words.is_empty());
        for w in &words {
            assert_eq!(w.len(), 7);
            assert!(w.is_canonical());
            assert!(completeness::is_supersequence(w));
        }
        let mut distinct = words.clone();
        distinct.dedup();
        assert_eq!(distinct.len(), words.len());

        let mut multisets: Vec<Vec<usize>> =
            words.iter().map(|w| w.frequencies().multiset()).collect();
        multisets.sort();
        multisets.dedup();
        assert_eq!(multisets, vec![vec![3, 2, 2], vec![3, 3, 1], vec![4, 2, 1]]);

        for fixture in [
            seq(&[1, 2, 1, 3, 1, 2, 1]),
            seq(&[1, 2, 1, 3, 2, 1, 2]),
            seq(&[1, 2, 3, 1, 2, 1, 3]),
        ] {
            assert!(words.contains(&fixture), "missing {fixture}");
        }
    }

    #[test]
    fn four_letter_enumeration_has_one_frequency_profile() {
        let words = enumerate_minimal(4, false).unwrap();
        assert!(!words.is_empty());
        for w in &words {
            assert_eq!(w.len(), 12);
            assert!(w.is_canonical());
            assert!(completeness::is_supersequence(w));
            assert_eq!(w.frequencies().multiset(), vec![4, 3, 3, 2]);
        }
    }

    // Takes minutes rather than milliseconds; run explicitly via
    // `cargo test -- --ignored` when the full five-letter proof is wanted.
    #[test]
    #[ignore]
    fn five_letter_minimum_is_nineteen() {
        let outcome = min_length(5, &SearchOptions::default()).unwrap();
        assert_exact(&outcome, 5, 19);
    }

    #[test]
    fn enumeration_refuses_large_alphabets() {
        assert!(matches!(
            enumerate_minimal(5, false),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            enumerate_minimal(6, true),
            Err(Error::Unsupported(_))
        ));
    }
}
