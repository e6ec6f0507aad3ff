//! Abelian squares in words: exact counting, extremal searches over all words
//! of a given length, avoidance searches, word families and reference data.
//!
//! ```
//! use abelsq::{census, Word};
//!
//! let w = Word::parse("ababbaaabaa").unwrap();
//! let c = census(&w);
//! assert_eq!((c.total, c.distinct, c.nonequivalent), (7, 5, 4));
//! ```

pub mod catalog;
pub mod counting;
pub mod families;
pub mod parikh;
pub mod search;
pub mod symmetry;
pub mod word;

pub use counting::{census, census_with, enumerate_abelian_squares, CensusOptions, Mode, Occurrence, SquareCensus};
pub use families::{generate, Family};
pub use parikh::{ParikhPrefixTable, ParikhVector};
pub use search::verify::{verify_conjecture, Report, Status, Target};
pub use search::{
    longest_avoiding, solve, solve_blind, AvoidanceResult, AvoidanceSpec, Objective, ProblemSpec, SearchError,
    SearchOptions, SearchResult, SquareKind,
};
pub use word::{Alphabet, GlyphStyle, Topology, Word, WordError};
