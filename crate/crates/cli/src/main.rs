//! `abelsq`: count, search, avoid, verify, construct and reproduce tables.

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelsq::catalog::{reproduce_table, ReportFormat, TableId};
use abelsq::counting::{count_distinct_ordinary_squares, enumerate_k_abelian_squares, is_abelian_power, CensusRecord};
use abelsq::search::verify::Target;
use abelsq::search::{
    longest_avoiding, solve, AvoidanceSpec, Objective, ProblemSpec, SearchError, SearchOptions, SquareKind,
    DEFAULT_NODE_BUDGET, DEFAULT_PREFIX_DEPTH, DEFAULT_WITNESS_CAP,
};
use abelsq::{census_with, generate, verify_conjecture, CensusOptions, Family, Mode, Topology, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_UNRESOLVED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "abelsq", version, about = "Abelian squares in words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the abelian squares of a word.
    Count(CountArgs),
    /// Solve an extremal problem over all words of length n.
    Search(SearchArgs),
    /// Find the longest word whose squares stay within a budget.
    Avoid(AvoidArgs),
    /// Check a conjecture or the catalogued words.
    Verify(VerifyArgs),
    /// Print a word from a named family.
    Construct(ConstructArgs),
    /// Recompute a reference table.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMode {
    All,
    Total,
    Distinct,
    Noneq,
    KAbelian,
    Squares,
    Power,
}

#[derive(Args)]
struct CountArgs {
    word: Option<String>,
    /// Read one word per line.
    #[arg(long, conflicts_with = "word")]
    file: Option<PathBuf>,
    #[arg(long, default_value = "linear")]
    topology: Topology,
    #[arg(long, value_enum, default_value = "all")]
    mode: CountMode,
    /// Factor length bound for k-abelian mode.
    #[arg(long)]
    k: Option<usize>,
    /// Exponent for power mode.
    #[arg(long)]
    p: Option<usize>,
    /// List occurrences as 1-based `[start, half_len]` pairs.
    #[arg(long)]
    occurrences: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Tuning {
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Node budget.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Depth of the prefixes that split the search into tasks.
    #[arg(long, default_value_t = DEFAULT_PREFIX_DEPTH)]
    prefix_depth: usize,
    /// Most canonical witnesses to keep.
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
}

impl Tuning {
    fn options(&self, checkpoint: Option<PathBuf>) -> Result<SearchOptions, Failure> {
        if self.threads == Some(0) {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        if self.budget == 0 {
            return Err(Failure::usage("--budget must be positive"));
        }
        Ok(SearchOptions {
            threads: self.threads,
            node_budget: self.budget,
            prefix_depth: self.prefix_depth,
            witness_cap: self.witness_cap,
            checkpoint,
            ..SearchOptions::default()
        })
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    objective: Objective,
    #[arg(long)]
    mode: Mode,
    #[arg(long, default_value = "linear")]
    topology: Topology,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Checkpoint file; resumed from when it exists.
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Abelian,
    Ordinary,
    KAbelian,
    Power,
}

#[derive(Args)]
struct AvoidArgs {
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Most distinct squares allowed.
    #[arg(long)]
    max_distinct: Option<usize>,
    /// Longest square allowed.
    #[arg(long)]
    max_square_length: Option<usize>,
    /// Stop once a word of this length is found.
    #[arg(long, default_value_t = 1000)]
    cap: usize,
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    target: Target,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    param: String,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    id: TableId,
    #[arg(long, default_value_t = 20)]
    n_max: usize,
    #[arg(long, default_value = "md")]
    format: ReportFormat,
    #[command(flatten)]
    tuning: Tuning,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::InvalidSpec(_) => EXIT_USAGE,
            SearchError::BudgetExceeded { .. } => EXIT_UNRESOLVED,
            SearchError::Checkpoint { .. } => EXIT_DATA,
        };
        Failure { code, message: e.to_string() }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

fn parse_word(text: &str, topology: Topology) -> Result<Word, Failure> {
    Word::parse(text.trim()).map(|w| w.with_topology(topology)).map_err(|e| Failure::data(format!("{text:?}: {e}")))
}

#[derive(Serialize)]
struct KAbelianRecord {
    word: String,
    topology: Topology,
    k: usize,
    count: usize,
    occurrences: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct SquaresRecord {
    word: String,
    topology: Topology,
    distinct_squares: usize,
}

#[derive(Serialize)]
struct PowerRecord {
    word: String,
    p: usize,
    abelian_power: bool,
}

fn count_one(word: &Word, args: &CountArgs) -> Result<(serde_json::Value, String), Failure> {
    match args.mode {
        CountMode::KAbelian => {
            let k = args.k.ok_or_else(|| Failure::usage("--mode k-abelian requires --k"))?;
            let occ = enumerate_k_abelian_squares(word, k).map_err(|e| Failure::usage(e.to_string()))?;
            let record = KAbelianRecord {
                word: word.to_string(),
                topology: word.topology(),
                k,
                count: occ.len(),
                occurrences: occ.iter().map(|o| [o.start + 1, o.half_len]).collect(),
            };
            let text = format!("{} {k}-abelian squares {}\n", record.word, record.count);
            Ok((serde_json::to_value(&record).expect("record"), text))
        }
        CountMode::Squares => {
            let record = SquaresRecord {
                word: word.to_string(),
                topology: word.topology(),
                distinct_squares: count_distinct_ordinary_squares(word),
            };
            let text = format!("{} distinct squares {}\n", record.word, record.distinct_squares);
            Ok((serde_json::to_value(&record).expect("record"), text))
        }
        CountMode::Power => {
            let p = args.p.ok_or_else(|| Failure::usage("--mode power requires --p"))?;
            let abelian_power = is_abelian_power(word, p).map_err(|e| Failure::usage(e.to_string()))?;
            let record = PowerRecord { word: word.to_string(), p, abelian_power };
            let text = format!("{} abelian {p}-power {}\n", record.word, abelian_power);
            Ok((serde_json::to_value(&record).expect("record"), text))
        }
        mode => {
            let census = census_with(word, CensusOptions { keep_occurrences: args.occurrences, ..Default::default() });
            let record = CensusRecord::new(word, &census);
            let text = match mode {
                CountMode::Total => format!("total {}\n", census.total),
                CountMode::Distinct => format!("distinct {}\n", census.distinct),
                CountMode::Noneq => format!("nonequivalent {}\n", census.nonequivalent),
                _ => {
                    let mut t = format!(
                        "word {}\ntopology {}\nn {}\ntotal {}\ndistinct {}\nnonequivalent {}\n",
                        record.word, record.topology, record.n, record.total, record.distinct, record.nonequivalent
                    );
                    if let Some(occ) = &record.occurrences {
                        let list: Vec<String> = occ.iter().map(|[i, l]| format!("({i},{l})")).collect();
                        t.push_str(&format!("occurrences {}\n", list.join(" ")));
                    }
                    t
                }
            };
            Ok((serde_json::to_value(&record).expect("record"), text))
        }
    }
}

fn count(args: CountArgs) -> Result<Output, Failure> {
    if args.k.is_some() && !matches!(args.mode, CountMode::KAbelian) {
        return Err(Failure::usage("--k applies only to --mode k-abelian"));
    }
    if args.p.is_some() && !matches!(args.mode, CountMode::Power) {
        return Err(Failure::usage("--p applies only to --mode power"));
    }
    let words = match (&args.word, &args.file) {
        (Some(w), None) => vec![parse_word(w, args.topology)?],
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| parse_word(l, args.topology))
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => return Err(Failure::usage("give a WORD or --file")),
    };
    let mut out = String::new();
    for (i, word) in words.iter().enumerate() {
        let (value, text) = count_one(word, &args)?;
        if args.json {
            out.push_str(&serde_json::to_string(&value).expect("json"));
            out.push('\n');
        } else {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&text);
        }
    }
    Ok(Output::ok(out))
}

fn search(args: SearchArgs) -> Result<Output, Failure> {
    let spec = ProblemSpec::new(args.objective, args.mode, args.topology, args.n, args.t);
    spec.validate()?;
    let options = args.tuning.options(args.resume)?;
    let result = solve(spec, &options)?;
    let record = result.record();
    let text = if args.json {
        json(&record)
    } else {
        let mut t = format!(
            "problem {}\nvalue {}\nwitness_count {}\nnodes {}\n",
            record.problem, record.value, record.witness_count, record.nodes
        );
        let more = if record.witnesses_truncated { format!(" (first {})", record.witness_cap) } else { String::new() };
        t.push_str(&format!("witnesses{more} {}\n", record.witnesses.join(" ")));
        t
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct AvoidRecord {
    spec: AvoidanceSpec,
    length: usize,
    exhausted: bool,
    cap_reached: bool,
    witnesses: Vec<String>,
    witnesses_truncated: bool,
    nodes: u64,
}

fn avoid(args: AvoidArgs) -> Result<Output, Failure> {
    let kind = match args.kind {
        KindArg::Abelian => SquareKind::Abelian,
        KindArg::Ordinary => SquareKind::Ordinary,
        KindArg::KAbelian => {
            SquareKind::KAbelian(args.k.ok_or_else(|| Failure::usage("--kind k-abelian requires --k"))?)
        }
        KindArg::Power => SquareKind::AbelianPower(args.p.ok_or_else(|| Failure::usage("--kind power requires --p"))?),
    };
    if args.max_distinct.is_none() && args.max_square_length.is_none() {
        return Err(Failure::usage("give --max-distinct or --max-square-length"));
    }
    let spec = AvoidanceSpec {
        t: args.t,
        kind,
        max_distinct: args.max_distinct,
        max_square_length: args.max_square_length,
        length_cap: args.cap,
    };
    spec.validate()?;
    let options = args.tuning.options(args.resume)?;
    let result = longest_avoiding(&spec, &options)?;
    let record = AvoidRecord {
        spec,
        length: result.length,
        exhausted: result.exhausted,
        cap_reached: result.cap_reached,
        witnesses: result.witnesses.iter().map(|w| w.to_string()).collect(),
        witnesses_truncated: result.witnesses_truncated,
        nodes: result.nodes,
    };
    let status = if result.exhausted {
        "exhausted"
    } else if result.cap_reached {
        "cap reached"
    } else {
        "budget exhausted"
    };
    let text = if args.json {
        json(&record)
    } else {
        format!(
            "length {}\nstatus {status}\nexhausted {}\nnodes {}\nwitnesses {}\n",
            record.length,
            record.exhausted,
            record.nodes,
            record.witnesses.join(" ")
        )
    };
    let code = if result.exhausted || result.cap_reached { 0 } else { EXIT_UNRESOLVED };
    Ok(Output { text, code })
}

fn verify(args: VerifyArgs) -> Result<Output, Failure> {
    if args.n_max == 0 {
        return Err(Failure::usage("--n-max must be at least 1"));
    }
    let options = args.tuning.options(None)?;
    let report = verify_conjecture(args.target, args.n_max, &options);
    let text = if args.json { json(&report) } else { report.render(color_enabled()) };
    Ok(Output { text, code: report.exit_code() as u8 })
}

fn construct(args: ConstructArgs) -> Result<Output, Failure> {
    let family = Family::from_name(&args.family, &args.param).map_err(|e| Failure::usage(e.to_string()))?;
    let word = generate(&family).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Output::ok(format!("{word}\n")))
}

fn table(args: TableArgs) -> Result<Output, Failure> {
    if !(1..=20).contains(&args.n_max) {
        return Err(Failure::usage("--n-max must be within 1..=20"));
    }
    let options = args.tuning.options(None)?;
    let report = reproduce_table(args.id, args.n_max, &options);
    Ok(Output { text: report.render(args.format, color_enabled()), code: report.exit_code() as u8 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Count(a) => count(a),
        Command::Search(a) => search(a),
        Command::Avoid(a) => avoid(a),
        Command::Verify(a) => verify(a),
        Command::Construct(a) => construct(a),
        Command::Table(a) => table(a),
    };
    match outcome {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("abelsq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
