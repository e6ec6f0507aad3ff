//! Exact detection and counting of abelian squares.
//!
//! An occurrence is a pair `(start, half_len)` such that the factor of length
//! `half_len` at `start` and the one right after it have equal Parikh vectors.
//! In a circular word the factor may wrap around, but its full length `2l`
//! never exceeds the word length, and starts range over `0..n`.

mod ordinary;
mod powers;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parikh::{PackedParikh, ParikhPrefixTable};
use crate::word::{Topology, Word};

pub use ordinary::{
    count_distinct_ordinary_squares, min_factor_square_mass, verify_restricted_abelian_squares, Restriction,
};
pub use powers::{enumerate_k_abelian_squares, is_abelian_power, k_equivalent, k_equivalent_letters};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("power exponent must be at least 2, got {0}")]
    Exponent(usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("factor length {m} outside 1..={n}")]
    FactorLength { m: usize, n: usize },
}

/// One abelian-square occurrence. `start` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub start: usize,
    pub half_len: usize,
}

impl Occurrence {
    pub fn new(start: usize, half_len: usize) -> Self {
        Occurrence { start, half_len }
    }

    pub fn len(&self) -> usize {
        2 * self.half_len
    }

    pub fn is_empty(&self) -> bool {
        self.half_len == 0
    }

    /// Letters of the occurrence, read from `unrolled` (see [`Word::unrolled`]).
    pub fn factor<'a>(&self, unrolled: &'a [u8]) -> &'a [u8] {
        &unrolled[self.start..self.start + self.len()]
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start + 1, self.half_len)
    }
}

/// Which census field an extremal problem looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Total,
    Distinct,
    Nonequivalent,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Total, Mode::Distinct, Mode::Nonequivalent];

    /// Letter used in the `C1C2C3(n)` shorthand.
    pub fn code(self) -> char {
        match self {
            Mode::Total => 'T',
            Mode::Distinct => 'D',
            Mode::Nonequivalent => 'N',
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Total => "total",
            Mode::Distinct => "distinct",
            Mode::Nonequivalent => "nonequivalent",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "total" => Ok(Mode::Total),
            "distinct" => Ok(Mode::Distinct),
            "noneq" | "nonequivalent" => Ok(Mode::Nonequivalent),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Iterator over abelian-square occurrences, by half-length then start.
pub struct AbelianSquares {
    table: ParikhPrefixTable,
    n: usize,
    circular: bool,
    half_len: usize,
    start: usize,
}

impl AbelianSquares {
    fn starts(&self, half_len: usize) -> usize {
        if self.circular {
            self.n
        } else {
            self.n + 1 - 2 * half_len
        }
    }
}

impl Iterator for AbelianSquares {
    type Item = Occurrence;

    fn next(&mut self) -> Option<Occurrence> {
        while 2 * self.half_len <= self.n {
            let starts = self.starts(self.half_len);
            while self.start < starts {
                let start = self.start;
                self.start += 1;
                if self.table.is_abelian_square(start, self.half_len) {
                    return Some(Occurrence::new(start, self.half_len));
                }
            }
            self.half_len += 1;
            self.start = 0;
        }
        None
    }
}

pub fn enumerate_abelian_squares(w: &Word) -> AbelianSquares {
    AbelianSquares { table: w.prefix_table(), n: w.len(), circular: w.is_circular(), half_len: 1, start: 0 }
}

/// How distinct squares of a circular word are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CircularDistinct {
    /// Squares are identified by the string read from the rotation.
    #[default]
    Strings,
    /// As `Strings`, but squares spanning the whole word are identified up to
    /// rotation, so each circular word contributes at most one of them per
    /// conjugacy class.
    FullLengthUpToRotation,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CensusOptions {
    pub circular_distinct: CircularDistinct,
    pub keep_occurrences: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SquareCensus {
    pub total: u64,
    pub distinct: u64,
    pub nonequivalent: u64,
    pub occurrences: Option<Vec<Occurrence>>,
}

impl SquareCensus {
    pub fn value(&self, mode: Mode) -> u64 {
        match mode {
            Mode::Total => self.total,
            Mode::Distinct => self.distinct,
            Mode::Nonequivalent => self.nonequivalent,
        }
    }
}

/// Key sets behind a census over part of the occurrence set. Merging is a
/// union of keys and a sum of totals, so shards may be combined in any order.
#[derive(Debug, Clone, Default)]
pub struct PartialCensus {
    total: u64,
    distinct: FxHashSet<Vec<u8>>,
    nonequivalent: FxHashSet<PackedParikh>,
    occurrences: Vec<Occurrence>,
}

impl PartialCensus {
    pub fn merge(mut self, other: PartialCensus) -> PartialCensus {
        self.total += other.total;
        self.distinct.extend(other.distinct);
        self.nonequivalent.extend(other.nonequivalent);
        self.occurrences.extend(other.occurrences);
        self
    }

    fn finish(self, keep: bool) -> SquareCensus {
        let occurrences = keep.then(|| {
            let mut occ = self.occurrences;
            occ.sort_unstable_by_key(|o| (o.half_len, o.start));
            occ
        });
        SquareCensus {
            total: self.total,
            distinct: self.distinct.len() as u64,
            nonequivalent: self.nonequivalent.len() as u64,
            occurrences,
        }
    }
}

struct CensusScan<'a> {
    unrolled: Vec<u8>,
    table: ParikhPrefixTable,
    word: &'a Word,
    options: CensusOptions,
}

impl CensusScan<'_> {
    fn new(word: &Word, options: CensusOptions) -> CensusScan<'_> {
        let unrolled = word.unrolled();
        let table = ParikhPrefixTable::new(&unrolled, word.alphabet_size());
        CensusScan { unrolled, table, word, options }
    }

    fn scan(&self, half_lens: std::ops::Range<usize>) -> PartialCensus {
        let n = self.word.len();
        let circular = self.word.is_circular();
        let mut part = PartialCensus::default();
        for l in half_lens {
            let starts = if circular { n } else { n + 1 - 2 * l };
            for start in 0..starts {
                let mid = start + l;
                let u = self.table.packed(start, mid);
                if u != self.table.packed(mid, mid + l) {
                    continue;
                }
                part.total += 1;
                part.nonequivalent.insert(u);
                let occ = Occurrence::new(start, l);
                let factor = occ.factor(&self.unrolled);
                let key = if circular
                    && 2 * l == n
                    && self.options.circular_distinct == CircularDistinct::FullLengthUpToRotation
                {
                    least_rotation(factor)
                } else {
                    factor.to_vec()
                };
                part.distinct.insert(key);
                if self.options.keep_occurrences {
                    part.occurrences.push(occ);
                }
            }
        }
        part
    }
}

fn least_rotation(s: &[u8]) -> Vec<u8> {
    (0..s.len().max(1))
        .map(|k| s.iter().cycle().skip(k).take(s.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

pub fn census(w: &Word) -> SquareCensus {
    census_with(w, CensusOptions::default())
}

pub fn census_with(w: &Word, options: CensusOptions) -> SquareCensus {
    let scan = CensusScan::new(w, options);
    scan.scan(1..w.len() / 2 + 1).finish(options.keep_occurrences)
}

/// Census computed over `shards` half-length ranges in parallel.
pub fn par_census(w: &Word, options: CensusOptions, shards: usize) -> SquareCensus {
    let scan = CensusScan::new(w, options);
    let max_half = w.len() / 2;
    let shards = shards.clamp(1, max_half.max(1));
    let step = max_half.div_ceil(shards).max(1);
    (0..shards)
        .into_par_iter()
        .map(|s| scan.scan((1 + s * step)..(1 + ((s + 1) * step).min(max_half))))
        .reduce(PartialCensus::default, PartialCensus::merge)
        .finish(options.keep_occurrences)
}

/// Fixed-field JSON record for a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub word: String,
    pub topology: Topology,
    pub n: usize,
    pub total: u64,
    pub distinct: u64,
    pub nonequivalent: u64,
    /// `[start, half_len]` pairs with 1-based starts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub occurrences: Option<Vec<[usize; 2]>>,
}

impl CensusRecord {
    pub fn new(word: &Word, census: &SquareCensus) -> Self {
        CensusRecord {
            word: word.to_string(),
            topology: word.topology(),
            n: word.len(),
            total: census.total,
            distinct: census.distinct,
            nonequivalent: census.nonequivalent,
            occurrences: census.occurrences.as_ref().map(|occ| occ.iter().map(|o| [o.start + 1, o.half_len]).collect()),
        }
    }
}
