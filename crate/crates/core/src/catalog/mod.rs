//! Embedded reference data: extremal tables for binary words, named example
//! words and the long ternary word with only `00`, `11`, `22` as abelian
//! squares.
//!
//! The data files live in `data/` and are compiled in. Known transcription
//! problems in the source tables are kept as explicit errata entries rather
//! than corrected in place.

mod report;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::counting::Mode;
use crate::search::{Objective, ProblemSpec};
use crate::word::{Alphabet, GlyphStyle, Topology, Word};

pub use report::{reproduce_table, verify_named_words, ReportFormat, RowCheck, TableReport, TableRow as ReportRow};

const XDL_JSON: &str = include_str!("../../data/xdl.json");
const XNL_JSON: &str = include_str!("../../data/xnl.json");
const MTL_JSON: &str = include_str!("../../data/mtl.json");
const WORDS_JSON: &str = include_str!("../../data/words.json");
const APPENDIX_TXT: &str = include_str!("../../data/appendix.txt");
const APPENDIX_SHA256: &str = include_str!("../../data/appendix.sha256");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    #[serde(rename = "XDL")]
    Xdl,
    #[serde(rename = "XNL")]
    Xnl,
    #[serde(rename = "MTL")]
    Mtl,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::Xdl, TableId::Xnl, TableId::Mtl];

    /// The binary linear problem a table row of length `n` records.
    pub fn problem(self, n: usize) -> ProblemSpec {
        let (objective, mode) = match self {
            TableId::Xdl => (Objective::Max, Mode::Distinct),
            TableId::Xnl => (Objective::Max, Mode::Nonequivalent),
            TableId::Mtl => (Objective::Min, Mode::Total),
        };
        ProblemSpec { objective, mode, topology: Topology::Linear, n, t: 2 }
    }

    pub fn source(self) -> &'static str {
        match self {
            TableId::Xdl => XDL_JSON,
            TableId::Xnl => XNL_JSON,
            TableId::Mtl => MTL_JSON,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::Xdl => "XDL",
            TableId::Xnl => "XNL",
            TableId::Mtl => "MTL",
        })
    }
}

impl FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "XDL" => Ok(TableId::Xdl),
            "XNL" => Ok(TableId::Xnl),
            "MTL" => Ok(TableId::Mtl),
            _ => Err(format!("unknown table {s:?} (expected XDL, XNL or MTL)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: usize,
    pub value: u64,
    pub example: String,
    pub witness_count: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    /// Row concerned, or `None` for remarks on surrounding text.
    pub n: Option<usize>,
    pub field: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub version: u32,
    pub id: TableId,
    pub oeis: String,
    pub caption: String,
    pub rows: Vec<TableEntry>,
    pub errata: Vec<Erratum>,
}

impl ExpectedTable {
    pub fn row(&self, n: usize) -> Option<&TableEntry> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn erratum(&self, n: usize, field: &str) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.n == Some(n) && e.field == field)
    }

    /// Serializes in the on-disk layout.
    pub fn to_file_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }
}

pub fn table(id: TableId) -> &'static ExpectedTable {
    static TABLES: OnceLock<Vec<ExpectedTable>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        TableId::ALL.iter().map(|id| serde_json::from_str(id.source()).expect("embedded table is valid JSON")).collect()
    });
    &tables[TableId::ALL.iter().position(|x| *x == id).expect("listed")]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWord {
    pub id: String,
    pub word: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWords {
    pub version: u32,
    pub words: Vec<NamedWord>,
}

impl NamedWords {
    pub fn to_file_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("word list serializes") + "\n"
    }
}

pub fn named_words_source() -> &'static str {
    WORDS_JSON
}

fn named_words() -> &'static NamedWords {
    static WORDS: OnceLock<NamedWords> = OnceLock::new();
    WORDS.get_or_init(|| serde_json::from_str(WORDS_JSON).expect("embedded word list is valid JSON"))
}

/// Digits of the appendix word, exactly as stored.
pub fn appendix_digits() -> &'static str {
    APPENDIX_TXT.trim_end()
}

/// Checksum recorded next to the appendix data.
pub fn appendix_recorded_checksum() -> &'static str {
    APPENDIX_SHA256.split_whitespace().next().unwrap_or_default()
}

pub fn appendix_checksum() -> String {
    hex::encode(Sha256::digest(appendix_digits().as_bytes()))
}

/// The 2034-letter ternary appendix word, or `None` if its checksum fails.
pub fn appendix_word() -> Option<Word> {
    if appendix_checksum() != appendix_recorded_checksum() {
        return None;
    }
    let alphabet = Alphabet::new(3, GlyphStyle::Digits).ok()?;
    let letters = Word::parse(appendix_digits()).ok()?.into_letters();
    Word::with_alphabet(letters, alphabet).ok()
}

/// Every identifier accepted by [`named_word`].
pub fn named_ids() -> Vec<String> {
    let mut ids: Vec<String> = TableId::ALL
        .iter()
        .flat_map(|&id| table(id).rows.iter().map(move |r| format!("{}-{}", id.to_string().to_lowercase(), r.n)))
        .collect();
    ids.extend(named_words().words.iter().map(|w| w.id.clone()));
    ids.push("appendix".to_string());
    ids
}

/// Looks up a word printed in the source: `xdl-N`, `xnl-N`, `mtl-N` for table
/// examples, the ids in `data/words.json`, or `appendix`.
pub fn named_word(id: &str) -> Option<Word> {
    if id == "appendix" {
        return appendix_word();
    }
    if let Some(entry) = named_words().words.iter().find(|w| w.id == id) {
        let size = if id.starts_with("ternary") { 3 } else { 2 };
        return Word::parse_with_alphabet(&entry.word, size).ok();
    }
    let (table_id, n) = id.split_once('-')?;
    let row = table(table_id.parse().ok()?).row(n.parse().ok()?)?;
    Word::parse_with_alphabet(&row.example, 2).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_cover_one_to_twenty() {
        for id in TableId::ALL {
            let t = table(id);
            assert_eq!(t.id, id);
            assert_eq!(t.rows.iter().map(|r| r.n).collect::<Vec<_>>(), (1..=20).collect::<Vec<_>>());
            assert_eq!(t.rows.iter().all(|r| r.witness_count.is_some()), id == TableId::Mtl);
        }
        assert_eq!(table(TableId::Xdl).oeis, "A262249");
        assert_eq!(table(TableId::Xnl).oeis, "A262265");
        assert_eq!(table(TableId::Mtl).oeis, "A268084");
    }

    #[test]
    fn data_files_round_trip_byte_identically() {
        for id in TableId::ALL {
            assert_eq!(table(id).to_file_string(), id.source());
        }
        assert_eq!(named_words().to_file_string(), WORDS_JSON);
    }

    #[test]
    fn example_lengths_match_rows_except_errata() {
        for id in TableId::ALL {
            let t = table(id);
            for r in &t.rows {
                if r.example.len() != r.n {
                    assert!(t.erratum(r.n, "example").is_some(), "{id} row {} unflagged", r.n);
                }
            }
        }
        assert_eq!(table(TableId::Xnl).row(5).unwrap().example, "aabbaa");
    }

    #[test]
    fn appendix_checksum_and_length() {
        assert_eq!(appendix_checksum(), appendix_recorded_checksum());
        let w = appendix_word().unwrap();
        assert_eq!(w.len(), 2034);
        assert_eq!(w.alphabet_size(), 3);
        assert!(w.to_string().starts_with("0001000200011100"));
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named_word("xdl-8").unwrap().to_string(), "aabbaabb");
        assert_eq!(named_word("mtl-11").unwrap().to_string(), "ababbaaabaa");
        assert_eq!(named_word("ternary-0").unwrap().to_string(), "abacaba");
        assert_eq!(named_word("binary-squares-2").unwrap().len(), 18);
        assert!(named_word("xdl-21").is_none());
        assert!(named_word("bogus").is_none());
        let ids = named_ids();
        assert_eq!(ids.len(), 60 + 7 + 1);
        assert!(ids.iter().all(|id| named_word(id).is_some()));
    }
}
