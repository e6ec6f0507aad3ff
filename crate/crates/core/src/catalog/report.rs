//! Table reproduction and checks of the catalogued words.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{appendix_word, named_words, table, TableId};
use crate::counting::{census, count_distinct_ordinary_squares, verify_restricted_abelian_squares};
use crate::search::verify::{paint, Report, Status};
use crate::search::{solve, SearchOptions};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Md,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(ReportFormat::Md),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

/// Outcome of checking a row's example word against the row value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum RowCheck {
    Attains,
    DoesNotAttain {
        length: usize,
        value: u64,
    },
    /// Listed as an erratum; the word's own census is reported.
    Erratum {
        length: usize,
        value: u64,
        note: String,
    },
    Unparseable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub expected: u64,
    pub computed: Option<u64>,
    pub expected_witness_count: Option<u64>,
    pub computed_witness_count: Option<u64>,
    pub example: String,
    pub example_check: RowCheck,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub id: TableId,
    pub oeis: String,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) > 0 {
            2
        } else if self.count(Status::Unresolved) > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: ReportFormat, color: bool) -> String {
        match format {
            ReportFormat::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            ReportFormat::Csv => {
                let mut out = String::from(
                    "n,expected,computed,expected_witness_count,computed_witness_count,example,example_check,status\n",
                );
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        r.n,
                        r.expected,
                        opt(r.computed),
                        opt(r.expected_witness_count),
                        opt(r.computed_witness_count),
                        r.example,
                        check_label(&r.example_check),
                        r.status
                    );
                }
                out
            }
            ReportFormat::Md => {
                let mut out = format!("# {} ({})\n\n", self.id, self.oeis);
                out.push_str("| n | expected | computed | witnesses (expected) | witnesses (computed) | example | example check | status |\n");
                out.push_str("|---|---|---|---|---|---|---|---|\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | {} | {} |",
                        r.n,
                        r.expected,
                        opt(r.computed),
                        opt(r.expected_witness_count),
                        opt(r.computed_witness_count),
                        r.example,
                        check_label(&r.example_check),
                        paint(r.status, color)
                    );
                }
                let notes: Vec<&TableRow> = self.rows.iter().filter(|r| !r.detail.is_empty()).collect();
                if !notes.is_empty() {
                    out.push('\n');
                    for r in notes {
                        let _ = writeln!(out, "- n={}: {}", r.n, r.detail);
                    }
                }
                let _ = writeln!(
                    out,
                    "\nsummary: {} pass, {} fail, {} unresolved",
                    self.count(Status::Pass),
                    self.count(Status::Fail),
                    self.count(Status::Unresolved)
                );
                out
            }
        }
    }
}

fn opt(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn check_label(check: &RowCheck) -> String {
    match check {
        RowCheck::Attains => "attains".into(),
        RowCheck::DoesNotAttain { length, value } => format!("does not attain (length {length}, value {value})"),
        RowCheck::Erratum { length, value, .. } => format!("erratum (length {length}, value {value})"),
        RowCheck::Unparseable => "unparseable".into(),
    }
}

/// Solves every row `n <= n_max` of table `id` and compares with the stored
/// values, example words and (for MTL) attaining-word counts.
pub fn reproduce_table(id: TableId, n_max: usize, options: &SearchOptions) -> TableReport {
    let expected = table(id);
    let mut rows = Vec::new();
    for entry in expected.rows.iter().filter(|r| r.n <= n_max) {
        let spec = id.problem(entry.n);
        let example_check = match Word::parse_with_alphabet(&entry.example, 2) {
            Err(_) => RowCheck::Unparseable,
            Ok(word) => {
                let value = census(&word).value(spec.mode);
                let length = word.len();
                match expected.erratum(entry.n, "example") {
                    Some(e) => RowCheck::Erratum { length, value, note: e.note.clone() },
                    None if length == entry.n && value == entry.value => RowCheck::Attains,
                    None => RowCheck::DoesNotAttain { length, value },
                }
            }
        };
        let mut row = TableRow {
            n: entry.n,
            expected: entry.value,
            computed: None,
            expected_witness_count: entry.witness_count,
            computed_witness_count: None,
            example: entry.example.clone(),
            example_check,
            status: Status::Pass,
            detail: String::new(),
        };
        let mut problems = Vec::new();
        match solve(spec, options) {
            Err(e) => {
                row.status = Status::Unresolved;
                problems.push(e.to_string());
            }
            Ok(result) => {
                row.computed = Some(result.value);
                if result.value != entry.value {
                    problems.push(format!("value {} differs from {}", result.value, entry.value));
                }
                if entry.witness_count.is_some() {
                    row.computed_witness_count = Some(result.witness_count);
                    if entry.witness_count != Some(result.witness_count) {
                        problems.push(format!("witness count {} differs", result.witness_count));
                    }
                }
                if matches!(row.example_check, RowCheck::DoesNotAttain { .. } | RowCheck::Unparseable) {
                    problems.push("example word does not attain the value".into());
                }
                if !problems.is_empty() {
                    row.status = Status::Fail;
                }
            }
        }
        if let RowCheck::Erratum { note, .. } = &row.example_check {
            problems.push(format!("erratum: {note}"));
        }
        row.detail = problems.join("; ");
        rows.push(row);
    }
    TableReport { id, oeis: expected.oeis.clone(), rows }
}

/// Checks every catalogued word against the claim attached to it.
pub fn verify_named_words() -> Report {
    let mut report = Report::new("named-words");
    for id in TableId::ALL {
        let expected = table(id);
        for entry in &expected.rows {
            let mode = id.problem(entry.n).mode;
            let Ok(word) = Word::parse_with_alphabet(&entry.example, 2) else {
                report.push(Some(entry.n), Status::Fail, format!("{id} example {:?} does not parse", entry.example));
                continue;
            };
            let value = census(&word).value(mode);
            let label = format!("{id} example {} (length {}) has {mode} census {value}", entry.example, word.len());
            if let Some(e) = expected.erratum(entry.n, "example") {
                report.push(Some(entry.n), Status::Info, format!("{label}; erratum: {}", e.note));
            } else if word.len() == entry.n && value == entry.value {
                report.push(Some(entry.n), Status::Pass, label);
            } else {
                report.push(Some(entry.n), Status::Fail, format!("{label}, expected {}", entry.value));
            }
        }
    }
    for named in &named_words().words {
        let id = named.id.as_str();
        let (size, claim): (usize, Option<(&str, u64)>) = if let Some(k) = id.strip_prefix("ternary-") {
            (3, Some(("distinct abelian squares", k.parse().unwrap_or(u64::MAX))))
        } else if let Some(k) = id.strip_prefix("binary-squares-") {
            (2, Some(("distinct squares", k.parse().unwrap_or(u64::MAX))))
        } else if id == "worked-example" {
            (2, Some(("abelian square occurrences", 7)))
        } else {
            (2, None)
        };
        let Ok(word) = Word::parse_with_alphabet(&named.word, size) else {
            report.push(None, Status::Fail, format!("{id}: {:?} does not parse", named.word));
            continue;
        };
        let Some((what, expected)) = claim else {
            report.push(None, Status::Info, format!("{id}: {word} has no recorded claim"));
            continue;
        };
        let value = match what {
            "distinct squares" => count_distinct_ordinary_squares(&word) as u64,
            "distinct abelian squares" => census(&word).distinct,
            _ => census(&word).total,
        };
        let status = if value == expected { Status::Pass } else { Status::Fail };
        report.push(None, status, format!("{id}: {word} has {value} {what} (expected {expected})"));
    }
    match appendix_word() {
        None => report.push(None, Status::Fail, "appendix: checksum mismatch"),
        Some(word) => {
            let r = verify_restricted_abelian_squares(&word, 2);
            let status = if r.holds { Status::Pass } else { Status::Fail };
            let detail = match r.violation {
                None => format!("appendix: {} letters, no abelian square longer than 2", word.len()),
                Some(v) => format!("appendix: abelian square at {v}"),
            };
            report.push(None, status, detail);
        }
    }
    report
}
