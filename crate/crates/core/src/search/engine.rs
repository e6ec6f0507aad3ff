//! Depth-first solver for the extremal problems.
//!
//! Words are enumerated in first-occurrence normal form (letter permutations
//! factored out). The linear census is maintained incrementally: appending a
//! letter only adds the occurrences ending at the new position, and each
//! level logs the keys it inserted so backtracking restores the sets.
//!
//! Every census field of a linear word is at least the corresponding field of
//! any prefix, and a circular word's census dominates its linear census, so a
//! prefix whose field already exceeds the incumbent of a minimisation cannot
//! lead to an attaining word and is pruned.

use std::collections::BTreeSet;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::checkpoint::Checkpoint;
use super::frontier::{self, Accumulate, Meter, RunConfig};
use super::{letter_bits, Objective, ProblemSpec, SearchError, SearchOptions, SearchResult};
use crate::counting::Mode;
use crate::parikh::unit;
use crate::symmetry::{canonical_orbit, normalize_into, permutation_orbit_size};
use crate::word::{Topology, Word};

/// Linear census of the current prefix, maintained under push/pop.
pub(crate) struct Incremental {
    bits: u32,
    letters: Vec<u8>,
    rows: Vec<u128>,
    codes: Vec<u128>,
    total: u64,
    distinct: FxHashSet<u128>,
    nonequivalent: FxHashSet<u128>,
    distinct_log: Vec<u128>,
    noneq_log: Vec<u128>,
    levels: Vec<(u64, usize, usize)>,
    used: u8,
    used_log: Vec<u8>,
}

impl Incremental {
    pub(crate) fn new(t: usize, capacity: usize) -> Self {
        let mut rows = Vec::with_capacity(capacity + 1);
        rows.push(0);
        let mut codes = Vec::with_capacity(capacity + 1);
        codes.push(0);
        Incremental {
            bits: letter_bits(t),
            letters: Vec::with_capacity(capacity),
            rows,
            codes,
            total: 0,
            distinct: FxHashSet::default(),
            nonequivalent: FxHashSet::default(),
            distinct_log: Vec::new(),
            noneq_log: Vec::new(),
            levels: Vec::with_capacity(capacity),
            used: 0,
            used_log: Vec::with_capacity(capacity),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.letters.len()
    }

    pub(crate) fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Number of distinct letters in the prefix.
    pub(crate) fn used(&self) -> u8 {
        self.used
    }

    /// Exact code of `letters[start..end]`, with a sentinel bit marking the
    /// length so codes of different lengths never collide.
    #[inline]
    fn factor_code(&self, start: usize, end: usize) -> u128 {
        let width = (end - start) as u32 * self.bits;
        let body = self.codes[end] - (self.codes[start] << width);
        body | (1u128 << width)
    }

    pub(crate) fn push(&mut self, c: u8) {
        self.levels.push((self.total, self.distinct_log.len(), self.noneq_log.len()));
        self.used_log.push(self.used);
        self.used = self.used.max(c + 1);
        self.letters.push(c);
        let last = *self.rows.last().expect("row 0");
        self.rows.push(last + unit(c));
        let code = *self.codes.last().expect("code 0");
        self.codes.push((code << self.bits) | c as u128);
        let end = self.letters.len();
        for half in 1..=end / 2 {
            let start = end - 2 * half;
            let mid = end - half;
            let u = self.rows[mid] - self.rows[start];
            if u != self.rows[end] - self.rows[mid] {
                continue;
            }
            self.total += 1;
            let key = self.factor_code(start, end);
            if self.distinct.insert(key) {
                self.distinct_log.push(key);
            }
            if self.nonequivalent.insert(u) {
                self.noneq_log.push(u);
            }
        }
    }

    pub(crate) fn pop(&mut self) {
        let (total, dlen, nlen) = self.levels.pop().expect("pop without push");
        self.total = total;
        for key in self.distinct_log.drain(dlen..) {
            self.distinct.remove(&key);
        }
        for key in self.noneq_log.drain(nlen..) {
            self.nonequivalent.remove(&key);
        }
        self.letters.pop();
        self.rows.pop();
        self.codes.pop();
        self.used = self.used_log.pop().expect("used log");
    }

    pub(crate) fn value(&self, mode: Mode) -> u64 {
        match mode {
            Mode::Total => self.total,
            Mode::Distinct => self.distinct.len() as u64,
            Mode::Nonequivalent => self.nonequivalent.len() as u64,
        }
    }

    /// Census field of the current word read circularly: the linear census
    /// plus occurrences that wrap around the end.
    pub(crate) fn circular_value(&self, mode: Mode) -> u64 {
        let n = self.letters.len();
        let row = |i: usize| if i <= n { self.rows[i] } else { self.rows[n] + self.rows[i - n] };
        let mut extra_total = 0u64;
        let mut extra_distinct: Vec<u128> = Vec::new();
        let mut extra_noneq: Vec<u128> = Vec::new();
        for half in 1..=n / 2 {
            for start in (n + 1 - 2 * half)..n {
                let mid = start + half;
                let u = row(mid) - row(start);
                if u != row(mid + half) - row(mid) {
                    continue;
                }
                extra_total += 1;
                match mode {
                    Mode::Total => {}
                    Mode::Distinct => {
                        let mut key = 1u128;
                        for pos in start..start + 2 * half {
                            key = (key << self.bits) | self.letters[pos % n] as u128;
                        }
                        if !self.distinct.contains(&key) {
                            extra_distinct.push(key);
                        }
                    }
                    Mode::Nonequivalent => {
                        if !self.nonequivalent.contains(&u) {
                            extra_noneq.push(u);
                        }
                    }
                }
            }
        }
        match mode {
            Mode::Total => self.total + extra_total,
            Mode::Distinct => {
                extra_distinct.sort_unstable();
                extra_distinct.dedup();
                self.distinct.len() as u64 + extra_distinct.len() as u64
            }
            Mode::Nonequivalent => {
                extra_noneq.sort_unstable();
                extra_noneq.dedup();
                self.nonequivalent.len() as u64 + extra_noneq.len() as u64
            }
        }
    }
}

/// Best value seen, how many words attain it, and their canonical forms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Incumbent {
    pub objective: Option<Objective>,
    pub best: Option<u64>,
    pub count: u64,
    pub witnesses: BTreeSet<Vec<u8>>,
    pub truncated: bool,
    pub cap: usize,
}

impl Incumbent {
    fn new(objective: Objective, cap: usize) -> Self {
        Incumbent { objective: Some(objective), cap, ..Default::default() }
    }

    fn offer(&mut self, value: u64, weight: u64, witness: Option<&[u8]>) {
        let objective = self.objective.expect("objective set");
        match self.best {
            Some(best) if objective.better(best, value) => return,
            Some(best) if best == value => self.count += weight,
            _ => {
                self.best = Some(value);
                self.count = weight;
                self.witnesses.clear();
                self.truncated = false;
            }
        }
        if let Some(w) = witness {
            self.add_witness(w.to_vec());
        }
    }

    fn add_witness(&mut self, w: Vec<u8>) {
        self.witnesses.insert(w);
        if self.witnesses.len() > self.cap {
            self.witnesses.pop_last();
            self.truncated = true;
        }
    }
}

impl Accumulate for Incumbent {
    fn merge(&mut self, other: Self) {
        let Some(value) = other.best else { return };
        if self.objective.is_none() {
            *self = other;
            return;
        }
        let objective = self.objective.expect("objective set");
        match self.best {
            Some(best) if objective.better(best, value) => {}
            Some(best) if best == value => {
                self.count += other.count;
                self.truncated |= other.truncated;
                for w in other.witnesses {
                    self.add_witness(w);
                }
            }
            _ => *self = Incumbent { cap: self.cap, ..other },
        }
    }
}

struct Solver {
    spec: ProblemSpec,
    state: Incremental,
    bound: Option<u64>,
    incumbent: Incumbent,
    scratch: Vec<Vec<u8>>,
    reversed: Vec<u8>,
    out_of_budget: bool,
}

impl Solver {
    fn new(spec: ProblemSpec, bound: Option<u64>, cap: usize) -> Self {
        Solver {
            spec,
            state: Incremental::new(spec.t, spec.n),
            bound,
            incumbent: Incumbent::new(spec.objective, cap),
            scratch: Vec::new(),
            reversed: Vec::with_capacity(spec.n),
            out_of_budget: false,
        }
    }

    fn pruned(&self) -> bool {
        matches!((self.spec.objective, self.bound), (Objective::Min, Some(b)) if self.state.value(self.spec.mode) > b)
    }

    fn next_letters(&self) -> std::ops::Range<u8> {
        0..(self.state.used() + 1).min(self.spec.t as u8)
    }

    fn leaf(&mut self) {
        let spec = self.spec;
        let letters = self.state.letters();
        match spec.topology {
            Topology::Linear => {
                let value = self.state.value(spec.mode);
                if let Some(best) = self.incumbent.best {
                    if spec.objective.better(best, value) {
                        return;
                    }
                }
                let weight = permutation_orbit_size(spec.t, self.state.used() as usize);
                normalize_into(letters.iter().rev().copied(), &mut self.reversed);
                let representative = letters <= self.reversed.as_slice();
                self.incumbent.offer(value, weight, representative.then_some(letters));
            }
            Topology::Circular => {
                let Some(weight) = canonical_orbit(letters, spec.t, true, &mut self.scratch) else { return };
                let value = self.state.circular_value(spec.mode);
                self.incumbent.offer(value, weight, Some(letters));
            }
        }
        if spec.objective == Objective::Min {
            let best = self.incumbent.best.expect("just offered");
            self.bound = Some(self.bound.map_or(best, |b| b.min(best)));
        }
    }

    /// Collects the prefixes of length `depth` that survive pruning.
    fn frontier(&mut self, depth: usize, out: &mut Vec<Vec<u8>>, nodes: &mut u64) {
        if self.state.len() == depth {
            out.push(self.state.letters().to_vec());
            return;
        }
        for c in self.next_letters() {
            *nodes += 1;
            self.state.push(c);
            if !self.pruned() {
                self.frontier(depth, out, nodes);
            }
            self.state.pop();
        }
    }

    /// Value of a greedy word: each step appends the letter that keeps the
    /// prefix field smallest. Any attained value bounds a minimum from above.
    fn greedy_bound(&mut self) -> u64 {
        let mode = self.spec.mode;
        while self.state.len() < self.spec.n {
            let mut best = (u64::MAX, 0u8);
            for c in self.next_letters() {
                self.state.push(c);
                best = best.min((self.state.value(mode), c));
                self.state.pop();
            }
            self.state.push(best.1);
        }
        let value = match self.spec.topology {
            Topology::Linear => self.state.value(mode),
            Topology::Circular => self.state.circular_value(mode),
        };
        while self.state.len() > 0 {
            self.state.pop();
        }
        value
    }
}

/// Number of nodes an unpruned enumeration visits: normal-form words of
/// length `1..=n` over at most `t` letters.
pub(crate) fn enumeration_nodes(n: usize, t: usize) -> u128 {
    // ways[k] = number of normal-form words of the current length using k letters
    let mut ways = vec![0u128; t + 1];
    ways[0] = 1;
    let mut total = 0u128;
    for _ in 0..n {
        let mut next = vec![0u128; t + 1];
        for k in 0..=t {
            if ways[k] == 0 {
                continue;
            }
            next[k] += ways[k] * k as u128;
            if k < t {
                next[k + 1] += ways[k];
            }
        }
        ways = next;
        total += ways.iter().sum::<u128>();
    }
    total
}

/// Exact extremal value, attaining-word count and canonical witnesses.
pub fn solve(spec: ProblemSpec, options: &SearchOptions) -> Result<SearchResult, SearchError> {
    spec.validate()?;
    let budget_error = |nodes: u64| SearchError::BudgetExceeded { n: spec.n, nodes, budget: options.node_budget };
    if spec.objective == Objective::Max {
        let planned = enumeration_nodes(spec.n, spec.t);
        if planned > options.node_budget as u128 {
            return Err(budget_error(planned.min(u64::MAX as u128) as u64));
        }
    }

    let depth = options.prefix_depth.min(spec.n);
    let key = serde_json::json!({ "spec": spec, "prefix_depth": depth });
    let resume = match options.checkpoint.as_deref() {
        Some(path) => Checkpoint::load(path, "solve", &key)?,
        None => None,
    };
    let bound: Option<u64> = match (&resume, spec.objective) {
        (Some(ckpt), _) => serde_json::from_value(ckpt.bound.clone()).map_err(|e| SearchError::Checkpoint {
            path: options.checkpoint.clone().unwrap_or_default(),
            message: e.to_string(),
        })?,
        (None, Objective::Min) => Some(Solver::new(spec, None, 0).greedy_bound()),
        (None, Objective::Max) => None,
    };

    let mut root = Solver::new(spec, bound, options.witness_cap);
    let mut prefixes = Vec::new();
    let mut frontier_nodes = 0u64;
    root.frontier(depth, &mut prefixes, &mut frontier_nodes);
    if frontier_nodes > options.node_budget {
        return Err(budget_error(frontier_nodes));
    }

    let cfg = RunConfig {
        threads: options.threads,
        checkpoint: options.checkpoint.as_deref(),
        checkpoint_every: options.checkpoint_every,
        kind: "solve",
        key,
        bound: serde_json::to_value(bound).expect("bound serializes"),
    };
    let outcome = frontier::run(&cfg, &prefixes, resume, options.node_budget - frontier_nodes, |prefix, meter| {
        let mut solver = Solver::new(spec, bound, options.witness_cap);
        for &c in prefix {
            solver.state.push(c);
        }
        solver.dfs(meter);
        solver.incumbent
    })?;
    let nodes = frontier_nodes + outcome.nodes;
    if outcome.budget_exhausted {
        return Err(budget_error(nodes));
    }
    let mut acc = Incumbent::new(spec.objective, options.witness_cap);
    acc.merge(outcome.acc);
    let value = acc.best.expect("every problem with n >= 1 has an attaining word");
    let witnesses = acc
        .witnesses
        .into_iter()
        .map(|w| Word::new(w, spec.t).expect("letters below t").with_topology(spec.topology))
        .collect();
    Ok(SearchResult {
        spec,
        value,
        witness_count: acc.count,
        witnesses,
        witnesses_truncated: acc.truncated,
        witness_cap: options.witness_cap,
        nodes,
    })
}

impl Solver {
    fn dfs(&mut self, meter: &mut Meter<'_>) {
        if self.state.len() == self.spec.n {
            self.leaf();
            return;
        }
        for c in self.next_letters() {
            if !meter.tick() {
                self.out_of_budget = true;
                return;
            }
            self.state.push(c);
            if !self.pruned() {
                self.dfs(meter);
            }
            self.state.pop();
            if self.out_of_budget {
                return;
            }
        }
    }
}
