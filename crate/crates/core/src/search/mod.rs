//! Extremal problems over all words of a given length, and longest-word
//! avoidance searches.
//!
//! Every problem is named by `C1C2C3(n)`: `X`/`M` for maximum or minimum,
//! `T`/`D`/`N` for the census field, `L`/`C` for the topology.

mod avoid;
mod blind;
mod checkpoint;
mod engine;
mod frontier;
pub mod verify;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::Mode;
use crate::word::{Topology, Word, MAX_ALPHABET};

pub use avoid::{longest_avoiding, AvoidanceResult, AvoidanceSpec, SquareKind};
pub use blind::solve_blind;
pub use checkpoint::Checkpoint;
pub use engine::solve;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_PREFIX_DEPTH: usize = 8;
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 10_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 256;

/// Longest word a solve can handle: factor strings are encoded exactly into
/// 120 bits.
pub fn max_solvable_length(t: usize) -> usize {
    120 / letter_bits(t) as usize
}

pub(crate) fn letter_bits(t: usize) -> u32 {
    usize::BITS - (t.max(2) - 1).leading_zeros()
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("node budget {budget} exceeded at n = {n} after {nodes} nodes")]
    BudgetExceeded { n: usize, nodes: u64, budget: u64 },
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: PathBuf, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    pub fn code(self) -> char {
        match self {
            Objective::Max => 'X',
            Objective::Min => 'M',
        }
    }

    /// Whether `a` is strictly better than `b`.
    pub fn better(self, a: u64, b: u64) -> bool {
        match self {
            Objective::Min => a < b,
            Objective::Max => a > b,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Min => "min",
            Objective::Max => "max",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Objective::Min),
            "max" => Ok(Objective::Max),
            other => Err(format!("unknown objective {other:?}")),
        }
    }
}

/// One cell of the extremal-problem grid at a fixed length and alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub objective: Objective,
    pub mode: Mode,
    pub topology: Topology,
    pub n: usize,
    pub t: usize,
}

impl ProblemSpec {
    pub fn new(objective: Objective, mode: Mode, topology: Topology, n: usize, t: usize) -> Self {
        ProblemSpec { objective, mode, topology, n, t }
    }

    /// All twelve objective/mode/topology combinations.
    pub fn grid(n: usize, t: usize) -> Vec<ProblemSpec> {
        let mut out = Vec::with_capacity(12);
        for objective in [Objective::Max, Objective::Min] {
            for mode in Mode::ALL {
                for topology in [Topology::Linear, Topology::Circular] {
                    out.push(ProblemSpec { objective, mode, topology, n, t });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n < 1 {
            return Err(SearchError::InvalidSpec("n must be at least 1".into()));
        }
        if !(2..=MAX_ALPHABET).contains(&self.t) {
            return Err(SearchError::InvalidSpec(format!("alphabet size {} outside 2..={MAX_ALPHABET}", self.t)));
        }
        if self.n > max_solvable_length(self.t) {
            return Err(SearchError::InvalidSpec(format!(
                "n = {} exceeds the longest solvable length {} for t = {}",
                self.n,
                max_solvable_length(self.t),
                self.t
            )));
        }
        Ok(())
    }

    /// Shorthand such as `XDL(8)`; non-binary alphabets append `[t=3]`.
    pub fn shorthand(&self) -> String {
        let topo = match self.topology {
            Topology::Linear => 'L',
            Topology::Circular => 'C',
        };
        let mut s = format!("{}{}{}({})", self.objective.code(), self.mode.code(), topo, self.n);
        if self.t != 2 {
            s.push_str(&format!("[t={}]", self.t));
        }
        s
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.shorthand())
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub node_budget: u64,
    pub prefix_depth: usize,
    pub witness_cap: usize,
    /// Checkpoint file, resumed from when it already exists.
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            node_budget: DEFAULT_NODE_BUDGET,
            prefix_depth: DEFAULT_PREFIX_DEPTH,
            witness_cap: DEFAULT_WITNESS_CAP,
            checkpoint: None,
            checkpoint_every: DEFAULT_CHECKPOINT_EVERY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub spec: ProblemSpec,
    pub value: u64,
    /// Number of words of length `n` over `t` letters attaining `value`.
    pub witness_count: u64,
    /// Lexicographically least member of each attaining orbit under letter
    /// permutations, reversal and (for circular problems) rotation; sorted.
    pub witnesses: Vec<Word>,
    pub witnesses_truncated: bool,
    pub witness_cap: usize,
    pub nodes: u64,
}

impl SearchResult {
    pub fn witness_strings(&self) -> Vec<String> {
        self.witnesses.iter().map(|w| w.to_string()).collect()
    }

    pub fn record(&self) -> SearchRecord {
        SearchRecord {
            problem: self.spec.shorthand(),
            spec: self.spec,
            value: self.value,
            witness_count: self.witness_count,
            witnesses: self.witness_strings(),
            witnesses_truncated: self.witnesses_truncated,
            witness_cap: self.witness_cap,
            nodes: self.nodes,
        }
    }
}

/// JSON form of a [`SearchResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub problem: String,
    pub spec: ProblemSpec,
    pub value: u64,
    pub witness_count: u64,
    pub witnesses: Vec<String>,
    pub witnesses_truncated: bool,
    pub witness_cap: usize,
    pub nodes: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        let p = ProblemSpec::new(Objective::Max, Mode::Distinct, Topology::Linear, 8, 2);
        assert_eq!(p.shorthand(), "XDL(8)");
        let p = ProblemSpec::new(Objective::Min, Mode::Nonequivalent, Topology::Circular, 6, 3);
        assert_eq!(p.shorthand(), "MNC(6)[t=3]");
        assert_eq!(ProblemSpec::grid(5, 2).len(), 12);
    }

    #[test]
    fn validation() {
        assert!(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, 0, 2).validate().is_err());
        assert!(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, 3, 1).validate().is_err());
        assert!(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, 121, 2).validate().is_err());
        assert!(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, 40, 8).validate().is_ok());
        assert_eq!(letter_bits(2), 1);
        assert_eq!(letter_bits(3), 2);
        assert_eq!(letter_bits(4), 2);
        assert_eq!(letter_bits(5), 3);
        assert_eq!(letter_bits(8), 3);
    }
}
