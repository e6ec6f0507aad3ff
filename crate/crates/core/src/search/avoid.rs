//! Longest words whose squares stay within a budget.
//!
//! Words grow one letter at a time; the squares ending at the new last letter
//! are exactly the ones the extension adds. A branch is cut as soon as a
//! square is too long or the number of distinct square strings exceeds the
//! allowance. Both conditions are inherited by every extension, so a search
//! that runs out of branches certifies that no longer word exists.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::checkpoint::Checkpoint;
use super::frontier::{self, Accumulate, Meter, RunConfig};
use super::{SearchError, SearchOptions};
use crate::counting::k_equivalent_letters;
use crate::parikh::unit;
use crate::symmetry::normalize_into;
use crate::word::{Word, MAX_ALPHABET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareKind {
    Abelian,
    Ordinary,
    KAbelian(usize),
    AbelianPower(usize),
}

impl fmt::Display for SquareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareKind::Abelian => write!(f, "abelian"),
            SquareKind::Ordinary => write!(f, "ordinary"),
            SquareKind::KAbelian(k) => write!(f, "{k}-abelian"),
            SquareKind::AbelianPower(p) => write!(f, "abelian-power-{p}"),
        }
    }
}

impl FromStr for SquareKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abelian" => Ok(SquareKind::Abelian),
            "ordinary" => Ok(SquareKind::Ordinary),
            other => Err(format!("unknown square kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceSpec {
    pub t: usize,
    pub kind: SquareKind,
    /// Most distinct square strings allowed.
    pub max_distinct: Option<usize>,
    /// Longest square allowed.
    pub max_square_length: Option<usize>,
    /// The search stops once a word of this length is found.
    pub length_cap: usize,
}

impl AvoidanceSpec {
    pub fn distinct(t: usize, kind: SquareKind, max_distinct: usize, length_cap: usize) -> Self {
        AvoidanceSpec { t, kind, max_distinct: Some(max_distinct), max_square_length: None, length_cap }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidSpec(m));
        if !(1..=MAX_ALPHABET).contains(&self.t) {
            return bad(format!("alphabet size {} outside 1..={MAX_ALPHABET}", self.t));
        }
        if self.length_cap == 0 || self.length_cap > crate::word::MAX_WORD_LEN {
            return bad(format!("length cap {} outside 1..={}", self.length_cap, crate::word::MAX_WORD_LEN));
        }
        match self.kind {
            SquareKind::KAbelian(0) => bad("k must be at least 1".into()),
            SquareKind::AbelianPower(p) if p < 2 => bad(format!("power exponent {p} below 2")),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceResult {
    /// Length of the longest admissible word found.
    pub length: usize,
    /// Canonical forms (letter permutations and reversal) of the longest
    /// words found, sorted.
    pub witnesses: Vec<Word>,
    pub witnesses_truncated: bool,
    /// The whole tree was searched, so `length` is the maximum.
    pub exhausted: bool,
    /// A word of `length_cap` letters was found and the search stopped.
    pub cap_reached: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct Longest {
    length: usize,
    witnesses: BTreeSet<Vec<u8>>,
    truncated: bool,
    cap_reached: bool,
    witness_cap: usize,
}

impl Longest {
    fn record(&mut self, letters: &[u8], reversed: &mut Vec<u8>) {
        let len = letters.len();
        if len < self.length {
            return;
        }
        if len > self.length || self.witnesses.is_empty() {
            self.length = len;
            self.witnesses.clear();
            self.truncated = false;
        }
        normalize_into(letters.iter().rev().copied(), reversed);
        let canonical = if reversed.as_slice() < letters { reversed.clone() } else { letters.to_vec() };
        self.add(canonical);
    }

    fn add(&mut self, w: Vec<u8>) {
        self.witnesses.insert(w);
        if self.witnesses.len() > self.witness_cap.max(1) {
            self.witnesses.pop_last();
            self.truncated = true;
        }
    }
}

impl Accumulate for Longest {
    fn merge(&mut self, other: Self) {
        self.cap_reached |= other.cap_reached;
        self.witness_cap = self.witness_cap.max(other.witness_cap);
        if other.witnesses.is_empty() {
            return;
        }
        if other.length > self.length || self.witnesses.is_empty() {
            self.length = other.length;
            self.witnesses = other.witnesses;
            self.truncated = other.truncated;
        } else if other.length == self.length {
            self.truncated |= other.truncated;
            for w in other.witnesses {
                self.add(w);
            }
        }
    }

    fn settled(&self) -> bool {
        self.cap_reached
    }
}

struct Avoider<'a> {
    spec: &'a AvoidanceSpec,
    letters: Vec<u8>,
    rows: Vec<u128>,
    /// `(start, end)` spans of the distinct square strings found so far.
    squares: Vec<(usize, usize)>,
    levels: Vec<(usize, u8)>,
    used: u8,
    reversed: Vec<u8>,
    out_of_budget: bool,
}

impl<'a> Avoider<'a> {
    fn new(spec: &'a AvoidanceSpec) -> Self {
        Avoider {
            spec,
            letters: Vec::new(),
            rows: vec![0],
            squares: Vec::new(),
            levels: Vec::new(),
            used: 0,
            reversed: Vec::new(),
            out_of_budget: false,
        }
    }

    fn next_letters(&self) -> std::ops::Range<u8> {
        0..(self.used + 1).min(self.spec.t as u8)
    }

    /// Whether the square `start..end` (made of `parts` blocks) is present.
    fn is_square(&self, start: usize, end: usize, parts: usize) -> bool {
        let block = (end - start) / parts;
        let rows = &self.rows;
        match self.spec.kind {
            SquareKind::Ordinary => self.letters[start..start + block] == self.letters[start + block..end],
            SquareKind::Abelian => rows[start + block] - rows[start] == rows[end] - rows[start + block],
            SquareKind::KAbelian(k) => {
                let mid = start + block;
                rows[mid] - rows[start] == rows[end] - rows[mid]
                    && k_equivalent_letters(&self.letters[start..mid], &self.letters[mid..end], k)
            }
            SquareKind::AbelianPower(_) => {
                let first = rows[start + block] - rows[start];
                (1..parts).all(|b| rows[start + (b + 1) * block] - rows[start + b * block] == first)
            }
        }
    }

    /// Appends `c`; returns whether the word is still admissible. The letter
    /// is pushed either way and must be popped.
    fn push(&mut self, c: u8) -> bool {
        self.levels.push((self.squares.len(), self.used));
        self.used = self.used.max(c + 1);
        self.letters.push(c);
        let last = *self.rows.last().expect("row 0");
        self.rows.push(last + unit(c));
        let end = self.letters.len();
        let parts = match self.spec.kind {
            SquareKind::AbelianPower(p) => p,
            _ => 2,
        };
        for block in 1..=end / parts {
            let start = end - parts * block;
            if !self.is_square(start, end, parts) {
                continue;
            }
            if self.spec.max_square_length.is_some_and(|max| end - start > max) {
                return false;
            }
            if let Some(allowed) = self.spec.max_distinct {
                let factor = &self.letters[start..end];
                let seen = self.squares.iter().any(|&(s, e)| self.letters[s..e] == *factor);
                if !seen {
                    self.squares.push((start, end));
                    if self.squares.len() > allowed {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn pop(&mut self) {
        let (squares, used) = self.levels.pop().expect("pop without push");
        self.squares.truncate(squares);
        self.used = used;
        self.letters.pop();
        self.rows.pop();
    }

    fn dfs(&mut self, meter: &mut Meter<'_>, acc: &mut Longest) {
        acc.record(&self.letters, &mut self.reversed);
        if self.letters.len() >= self.spec.length_cap {
            acc.cap_reached = true;
            return;
        }
        for c in self.next_letters() {
            if !meter.tick() {
                self.out_of_budget = true;
                return;
            }
            if self.push(c) {
                self.dfs(meter, acc);
            }
            self.pop();
            if self.out_of_budget || acc.cap_reached {
                return;
            }
        }
    }

    /// Records nodes shallower than `depth` and collects admissible prefixes
    /// of exactly that length.
    fn frontier(&mut self, depth: usize, acc: &mut Longest, out: &mut Vec<Vec<u8>>, nodes: &mut u64) {
        if self.letters.len() == depth {
            out.push(self.letters.clone());
            return;
        }
        acc.record(&self.letters, &mut self.reversed);
        for c in self.next_letters() {
            *nodes += 1;
            if self.push(c) {
                self.frontier(depth, acc, out, nodes);
            }
            self.pop();
        }
    }
}

/// Depth-first search for the longest admissible word over `spec.t`
/// letters. Budget exhaustion is not an error: the best word so far is
/// returned with `exhausted = false`.
pub fn longest_avoiding(spec: &AvoidanceSpec, options: &SearchOptions) -> Result<AvoidanceResult, SearchError> {
    spec.validate()?;
    let depth = options.prefix_depth.min(spec.length_cap);
    let key = serde_json::json!({ "spec": spec, "prefix_depth": depth });
    let resume = match options.checkpoint.as_deref() {
        Some(path) => Checkpoint::load(path, "avoid", &key)?,
        None => None,
    };

    let mut seed = Longest { witness_cap: options.witness_cap, ..Default::default() };
    let mut prefixes = Vec::new();
    let mut frontier_nodes = 0;
    Avoider::new(spec).frontier(depth, &mut seed, &mut prefixes, &mut frontier_nodes);

    let cfg = RunConfig {
        threads: options.threads,
        checkpoint: options.checkpoint.as_deref(),
        checkpoint_every: options.checkpoint_every,
        kind: "avoid",
        key,
        bound: serde_json::Value::Null,
    };
    let budget = options.node_budget.saturating_sub(frontier_nodes);
    let outcome = frontier::run(&cfg, &prefixes, resume, budget, |prefix, meter| {
        let mut acc = Longest { witness_cap: options.witness_cap, ..Default::default() };
        let mut avoider = Avoider::new(spec);
        for &c in prefix {
            avoider.push(c);
        }
        avoider.dfs(meter, &mut acc);
        acc
    })?;

    let mut acc = seed;
    acc.merge(outcome.acc);
    let witnesses = acc.witnesses.into_iter().map(|w| Word::new(w, spec.t).expect("letters below t")).collect();
    let budget_exhausted = outcome.budget_exhausted || frontier_nodes > options.node_budget;
    Ok(AvoidanceResult {
        length: acc.length,
        witnesses,
        witnesses_truncated: acc.truncated,
        exhausted: !budget_exhausted && !acc.cap_reached,
        cap_reached: acc.cap_reached,
        nodes: frontier_nodes + outcome.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: AvoidanceSpec) -> AvoidanceResult {
        longest_avoiding(&spec, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn small_frontiers() {
        let r = run(AvoidanceSpec::distinct(2, SquareKind::Abelian, 0, 100));
        assert_eq!((r.length, r.exhausted), (3, true));
        assert_eq!(r.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["aba"]);
        let r = run(AvoidanceSpec::distinct(3, SquareKind::Abelian, 0, 100));
        assert_eq!((r.length, r.exhausted), (7, true));
        assert!(r.witnesses.iter().any(|w| w.to_string() == "abacaba"));
        let r = run(AvoidanceSpec::distinct(2, SquareKind::Ordinary, 0, 100));
        assert_eq!((r.length, r.exhausted), (3, true));
        let r = run(AvoidanceSpec::distinct(2, SquareKind::Ordinary, 1, 100));
        assert_eq!((r.length, r.exhausted), (7, true));
        assert!(r.witnesses.iter().any(|w| w.to_string() == "aaabaaa"));
    }

    #[test]
    fn binary_words_of_length_four_all_contain_abelian_squares() {
        // Oracle: all 16 binary words of length 4.
        for code in 0..16u32 {
            let letters: Vec<u8> = (0..4).map(|b| (code >> b & 1) as u8).collect();
            let w = Word::new(letters, 2).unwrap();
            assert!(crate::counting::enumerate_abelian_squares(&w).next().is_some(), "{w}");
        }
    }

    #[test]
    fn length_cap_stops_search() {
        let r = run(AvoidanceSpec::distinct(2, SquareKind::Abelian, 50, 12));
        assert_eq!((r.length, r.exhausted, r.cap_reached), (12, false, true));
    }

    #[test]
    fn square_length_restriction() {
        // Binary words whose abelian squares all have length 2 are short.
        let spec = AvoidanceSpec {
            t: 2,
            kind: SquareKind::Abelian,
            max_distinct: None,
            max_square_length: Some(2),
            length_cap: 100,
        };
        let r = run(spec);
        assert!(r.exhausted);
        for w in &r.witnesses {
            assert!(crate::counting::verify_restricted_abelian_squares(w, 2).holds);
        }
    }

    #[test]
    fn budget_exhaustion_keeps_best_so_far() {
        let opts = SearchOptions { node_budget: 1000, ..Default::default() };
        let r = longest_avoiding(&AvoidanceSpec::distinct(3, SquareKind::Abelian, 2, 200), &opts).unwrap();
        assert!(!r.exhausted && !r.cap_reached);
        assert!(r.length > 0);
    }

    #[test]
    fn rejects_bad_specs() {
        let o = SearchOptions::default();
        assert!(longest_avoiding(&AvoidanceSpec::distinct(0, SquareKind::Abelian, 0, 10), &o).is_err());
        assert!(longest_avoiding(&AvoidanceSpec::distinct(2, SquareKind::KAbelian(0), 0, 10), &o).is_err());
        assert!(longest_avoiding(&AvoidanceSpec::distinct(2, SquareKind::AbelianPower(1), 0, 10), &o).is_err());
    }
}
