//! Command-line front end: every library operation behind one binary with
//! stable text and JSON interfaces.
//!
//! Exit codes: 0 when everything asked for passed, 1 when a property was
//! violated or a check failed, 2 on malformed input or usage errors, 3 when
//! a budget ran out before the run could conclude.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superseq::completeness;
use superseq::constructions::{self, BlockGrowth, BoundConstants};
use superseq::search::{self, Budget, SearchOptions};
use superseq::segmentation;
use superseq::verifier::{self, CheckOptions, Status, StructureReport, SuiteOptions, Verdict};
use superseq::Sequence;

const SCHEMA_VERSION: u32 = 1;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "superseq",
    version,
    about = "Words over a small alphabet that contain every arrangement of it",
    propagate_version = true
)]
struct Cli {
    /// Emit JSON (with a schema_version field) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Where words come from: an inline argument, a file, or stdin. Files carry
/// one word per line; blank lines and lines starting with '#' are skipped.
#[derive(Args)]
struct InputArgs {
    /// The word itself, e.g. "1 2 3 1 2 1 3" (tokens split on spaces or
    /// commas, optional "n=<int>;" header); "-" reads stdin.
    #[arg(conflicts_with = "file")]
    seq: Option<String>,
    /// Read words from this file instead; "-" reads stdin. Used when no
    /// inline word is given, defaulting to stdin.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Declared alphabet size; inferred from the largest letter if absent.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether each word contains every arrangement of its alphabet.
    Check(#[command(flatten)] InputArgs),
    /// Cut each word into its segments (shortest k-complete prefixes).
    Segment {
        #[command(flatten)]
        input: InputArgs,
        /// Use the suffix-based segmentation instead.
        #[arg(long)]
        reverse: bool,
    },
    /// Full structural report: segmentations, rank labeling, frequency
    /// table, duplicates, and every applicable check.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Run minimality-dependent checks even when the length does not
        /// match the recorded minimum; the assumption is recorded.
        #[arg(long)]
        assume_minimal: bool,
    },
    /// Emit a known word containing every arrangement of n letters.
    Construct {
        #[arg(long)]
        n: usize,
        /// Skip the pruning pass and emit the plain n-by-n block word.
        #[arg(long)]
        raw: bool,
    },
    /// Length bounds and block partial sums for one or more alphabet sizes.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Extend the table through this size (inclusive).
        #[arg(long)]
        to: Option<usize>,
        /// Epsilon for the epsilon-dependent bounds.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Constant attached to the epsilon-dependent bounds.
        #[arg(long)]
        c_epsilon: Option<f64>,
        /// Constant for the n^(55/32) lower bound.
        #[arg(long)]
        c: Option<f64>,
    },
    /// Exact minimum length by exhaustive search (alphabets up to 8).
    Search {
        #[arg(long)]
        n: usize,
        /// Stop after expanding this many nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Stop after this many seconds of wall clock.
        #[arg(long)]
        max_seconds: Option<f64>,
        /// Disable the progress-signature memo (same answers, more nodes).
        #[arg(long)]
        no_dominance: bool,
        /// Print the witness word as well.
        #[arg(long)]
        emit_witness: bool,
    },
    /// List every canonical minimum-length word (alphabets up to 5).
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print the words themselves, one per line.
        #[arg(long)]
        canonical: bool,
        /// Print the frequency multisets with their counts.
        #[arg(long)]
        distributions: bool,
        /// Allow the five-letter run (tens of seconds).
        #[arg(long)]
        allow_long: bool,
    },
    /// Drop every letter whose removal keeps all arrangements contained.
    Prune(#[command(flatten)] InputArgs),
    /// Run the whole verification battery and report every verdict.
    VerifyPaper {
        /// Wall-clock cap per search run inside the suite.
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// Also run the five-letter exact search.
        #[arg(long)]
        include_n5: bool,
        /// Extra word files to push through the analyzer ("-" for stdin);
        /// their verdicts join the suite's.
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
    },
    /// Terms of the block sequence (alternating odd/even runs).
    Connell {
        #[arg(long, value_enum, default_value_t = KindArg::Geometric)]
        kind: KindArg,
        /// How many terms to emit.
        #[arg(long, default_value_t = 15)]
        terms: usize,
        /// Also emit the running partial sums.
        #[arg(long)]
        sums: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Arithmetic,
    Geometric,
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// The Rust runtime ignores SIGPIPE, which turns `superseq ... | head` into
/// a panic inside println! once the reader closes. Restore the default so a
/// closed pipe ends the process quietly, like any other line-oriented tool.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Check(input) => cmd_check(&input, cli.json),
        Command::Segment { input, reverse } => cmd_segment(&input, reverse, cli.json),
        Command::Analyze {
            input,
            assume_minimal,
        } => cmd_analyze(&input, assume_minimal, cli.json),
        Command::Construct { n, raw } => cmd_construct(n, raw, cli.json),
        Command::Bounds {
            n,
            to,
            epsilon,
            c_epsilon,
            c,
        } => cmd_bounds(n, to, epsilon, c_epsilon, c, cli.json),
        Command::Search {
            n,
            max_nodes,
            max_seconds,
            no_dominance,
            emit_witness,
        } => cmd_search(
            n,
            max_nodes,
            max_seconds,
            no_dominance,
            emit_witness,
            cli.json,
        ),
        Command::Enumerate {
            n,
            canonical,
            distributions,
            allow_long,
        } => cmd_enumerate(n, canonical, distributions, allow_long, cli.json),
        Command::Prune(input) => cmd_prune(&input, cli.json),
        Command::VerifyPaper {
            budget_seconds,
            include_n5,
            inputs,
        } => cmd_verify(budget_seconds, include_n5, &inputs, cli.json),
        Command::Connell { kind, terms, sums } => cmd_connell(kind, terms, sums, cli.json),
    }
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

/// A parsed word plus where it came from. `label` is empty for inline
/// arguments and "<source>:<line>" for file/stdin input.
struct Input {
    label: String,
    word: Sequence,
}

fn read_source(path: &PathBuf) -> anyhow::Result<(String, String)> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(("stdin".to_string(), text))
    } else {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok((path.display().to_string(), text))
    }
}

fn parse_lines(name: &str, text: &str, n: Option<usize>) -> anyhow::Result<Vec<Input>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let word =
            Sequence::parse_with_n(trimmed, n).with_context(|| format!("{}:{}", name, i + 1))?;
        out.push(Input {
            label: format!("{}:{}", name, i + 1),
            word,
        });
    }
    Ok(out)
}

impl InputArgs {
    fn read(&self) -> anyhow::Result<Vec<Input>> {
        // A bare "-" is the conventional stdin marker, not a word.
        if let Some(text) = self.seq.as_deref().filter(|t| *t != "-") {
            let word = Sequence::parse_with_n(text, self.n).context("parsing word")?;
            return Ok(vec![Input {
                label: String::new(),
                word,
            }]);
        }
        let path = self.file.clone().unwrap_or_else(|| PathBuf::from("-"));
        let (name, text) = read_source(&path)?;
        let inputs = parse_lines(&name, &text, self.n)?;
        if inputs.is_empty() {
            bail!("no words found in {}", name);
        }
        Ok(inputs)
    }
}

fn prefixed(label: &str, line: &str) -> String {
    if label.is_empty() {
        line.to_string()
    } else {
        format!("{}: {}", label, line)
    }
}

fn emit_json(payload: Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&payload).expect("valid JSON")
    );
}

fn json_envelope(command: &str, body: Value) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("schema_version".to_string(), json!(SCHEMA_VERSION));
    map.insert("command".to_string(), json!(command));
    if let Value::Object(extra) = body {
        map.extend(extra);
    }
    Value::Object(map)
}

// ---------------------------------------------------------------------------
// check / segment / analyze / prune (word-driven)
// ---------------------------------------------------------------------------

fn cmd_check(input: &InputArgs, as_json: bool) -> anyhow::Result<u8> {
    let inputs = input.read()?;
    let mut rows = Vec::new();
    let mut all_pass = true;
    for inp in &inputs {
        let idx = completeness::Index::new(&inp.word);
        let ok = idx.is_supersequence();
        let level = idx.completeness_level();
        all_pass &= ok;
        if as_json {
            rows.push(json!({
                "source": inp.label,
                "word": inp.word,
                "n": inp.word.n(),
                "length": inp.word.len(),
                "supersequence": ok,
                "completeness_level": level,
            }));
        } else {
            println!(
                "{}",
                prefixed(&inp.label, &format!("supersequence: {}", ok))
            );
            if !ok {
                println!(
                    "{}",
                    prefixed(&inp.label, &format!("completeness_level: {}", level))
                );
            }
        }
    }
    if as_json {
        emit_json(json_envelope("check", json!({ "results": rows })));
    }
    Ok(if all_pass { 0 } else { EXIT_FAIL })
}

/// The flat JSON shape shared by `segment` and `analyze`: segments as letter
/// arrays, terminals (null where undefined), the rank labeling as a
/// letter-to-rank map, and within-segment duplicates.
fn segmentation_fields(word: &Sequence, reverse: bool) -> (Value, Option<String>) {
    let seg = if reverse {
        segmentation::reverse_segment(word)
    } else {
        segmentation::segment(word)
    };
    let seg = match seg {
        Ok(seg) => seg,
        Err(e) => return (json!({}), Some(e.to_string())),
    };
    let bold: BTreeMap<String, usize> = segmentation::bold_labels(word)
        .map(|b| {
            (1..=b.n())
                .map(|rank| (b.letter_of_rank(rank).to_string(), rank))
                .collect()
        })
        .unwrap_or_default();
    let duplicates: Vec<Value> = seg
        .duplicate_report()
        .into_iter()
        .map(|(segment, letter, count)| json!({"segment": segment, "letter": letter, "count": count}))
        .collect();
    (
        json!({
            "orientation": if reverse { "reverse" } else { "forward" },
            "boundaries": seg.boundaries(),
            "segments": seg.segments(),
            "terminals": seg.terminals(),
            "remainder": seg.remainder(),
            "bold": bold,
            "duplicates": duplicates,
        }),
        None,
    )
}

fn print_segmentation_text(label: &str, word: &Sequence, reverse: bool) -> bool {
    let seg = if reverse {
        segmentation::reverse_segment(word)
    } else {
        segmentation::segment(word)
    };
    let seg = match seg {
        Ok(seg) => seg,
        Err(e) => {
            println!("{}", prefixed(label, &format!("error: {}", e)));
            return false;
        }
    };
    let fmt_word = |w: &Sequence| {
        w.letters()
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!(
        "{}",
        prefixed(label, &format!("boundaries: {:?}", seg.boundaries()))
    );
    for (i, s) in seg.segments().iter().enumerate() {
        println!(
            "{}",
            prefixed(label, &format!("segment {}: {}", i + 1, fmt_word(s)))
        );
    }
    if !seg.remainder().is_empty() {
        println!(
            "{}",
            prefixed(label, &format!("remainder: {}", fmt_word(seg.remainder())))
        );
    }
    let terminals: Vec<String> = seg
        .terminals()
        .iter()
        .map(|t| match t {
            Some(a) => a.to_string(),
            None => "-".to_string(),
        })
        .collect();
    println!(
        "{}",
        prefixed(label, &format!("terminals: {}", terminals.join(" ")))
    );
    if let Ok(bold) = segmentation::bold_labels(word) {
        let rows: Vec<String> = bold
            .rows()
            .map(|(rank, letter, anchor)| format!("{}={}@{}", rank, letter, anchor))
            .collect();
        println!(
            "{}",
            prefixed(
                label,
                &format!("bold (rank=letter@position): {}", rows.join(" "))
            )
        );
    }
    for (segment, letter, count) in seg.duplicate_report() {
        println!(
            "{}",
            prefixed(
                label,
                &format!(
                    "duplicate: letter {} x{} in segment {}",
                    letter, count, segment
                )
            )
        );
    }
    true
}

fn cmd_segment(input: &InputArgs, reverse: bool, as_json: bool) -> anyhow::Result<u8> {
    let inputs = input.read()?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for inp in &inputs {
        if as_json {
            let (fields, error) = segmentation_fields(&inp.word, reverse);
            all_ok &= error.is_none();
            let mut row = json!({"source": inp.label, "word": inp.word});
            if let Some(e) = error {
                row["error"] = json!(e);
            }
            if let (Value::Object(row), Value::Object(fields)) = (&mut row, fields) {
                row.extend(fields);
            }
            rows.push(row);
        } else {
            all_ok &= print_segmentation_text(&inp.label, &inp.word, reverse);
        }
    }
    if as_json {
        emit_json(json_envelope("segment", json!({ "results": rows })));
    }
    Ok(if all_ok { 0 } else { EXIT_FAIL })
}

fn verdict_line(v: &Verdict) -> String {
    let tag = match v.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inapplicable => "SKIP",
    };
    let subject = if v.subject.is_empty() {
        String::new()
    } else {
        format!(" ({})", v.subject)
    };
    let details = if v.details.is_empty() {
        String::new()
    } else {
        format!(" -- {}", v.details)
    };
    format!(
        "[{}] {}{}: {}{}",
        tag, v.rule, subject, v.statement, details
    )
}

fn print_report_text(label: &str, report: &StructureReport) {
    let say = |line: &str| println!("{}", prefixed(label, line));
    say(&format!(
        "n: {}  length: {}  supersequence: {}",
        report.n, report.length, report.supersequence
    ));
    if let Some(fwd) = &report.forward {
        say(&format!("segment lengths: {:?}", fwd.segment_lengths));
        say(&format!("prefix lengths: {:?}", fwd.prefix_lengths));
    }
    if let Some(rev) = &report.reverse {
        say(&format!("reverse boundaries: {:?}", rev.boundaries));
    }
    if !report.bold.is_empty() {
        let rows: Vec<String> = report
            .bold
            .iter()
            .map(|r| format!("{}={}@{}", r.rank, r.letter, r.anchor))
            .collect();
        say(&format!("bold (rank=letter@position): {}", rows.join(" ")));
    }
    for row in &report.frequencies {
        let rank = row
            .rank
            .map(|r| r.to_string())
            .unwrap_or_else(|| "-".to_string());
        say(&format!(
            "frequency: rank {} letter {} total {} per-segment {:?} remainder {}",
            rank, row.letter, row.total, row.per_segment, row.remainder
        ));
    }
    for d in &report.duplicates {
        say(&format!(
            "duplicate: letter {} x{} in segment {}",
            d.letter, d.count, d.segment
        ));
    }
    for v in &report.verdicts {
        say(&verdict_line(v));
    }
}

fn cmd_analyze(input: &InputArgs, assume_minimal: bool, as_json: bool) -> anyhow::Result<u8> {
    let inputs = input.read()?;
    let opts = CheckOptions { assume_minimal };
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for inp in &inputs {
        let report = verifier::analyze(&inp.word, &opts);
        failures += report
            .verdicts
            .iter()
            .filter(|v| v.status == Status::Fail)
            .count();
        if as_json {
            // Keep the flat segmentation fields alongside the full report so
            // `segment` and `analyze` share a stable surface.
            let (fields, _) = segmentation_fields(&inp.word, false);
            let mut row = json!({"source": inp.label, "report": report});
            if let (Value::Object(row), Value::Object(fields)) = (&mut row, fields) {
                row.extend(fields);
            }
            rows.push(row);
        } else {
            print_report_text(&inp.label, &report);
        }
    }
    if as_json {
        emit_json(json_envelope("analyze", json!({ "results": rows })));
    } else if failures > 0 {
        println!("failures: {}", failures);
    }
    Ok(if failures == 0 { 0 } else { EXIT_FAIL })
}

fn cmd_prune(input: &InputArgs, as_json: bool) -> anyhow::Result<u8> {
    let inputs = input.read()?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for inp in &inputs {
        match constructions::greedy_prune(&inp.word) {
            Ok(pruned) => {
                if as_json {
                    rows.push(json!({
                        "source": inp.label,
                        "word": pruned,
                        "length": pruned.len(),
                        "removed": inp.word.len() - pruned.len(),
                    }));
                } else {
                    println!("{}", prefixed(&inp.label, &pruned.format()));
                }
            }
            Err(e) => {
                all_ok = false;
                if as_json {
                    rows.push(json!({"source": inp.label, "error": e.to_string()}));
                } else {
                    println!("{}", prefixed(&inp.label, &format!("error: {}", e)));
                }
            }
        }
    }
    if as_json {
        emit_json(json_envelope("prune", json!({ "results": rows })));
    }
    Ok(if all_ok { 0 } else { EXIT_FAIL })
}

// ---------------------------------------------------------------------------
// construct / bounds / connell (generation)
// ---------------------------------------------------------------------------

fn cmd_construct(n: usize, raw: bool, as_json: bool) -> anyhow::Result<u8> {
    let blocks = constructions::blocks_construction(n)?;
    let word = if raw {
        blocks
    } else {
        constructions::greedy_prune(&blocks)?
    };
    if as_json {
        emit_json(json_envelope(
            "construct",
            json!({"n": n, "raw": raw, "length": word.len(), "word": word}),
        ));
    } else {
        println!("{}", word.format());
    }
    Ok(0)
}

fn cmd_bounds(
    n: usize,
    to: Option<usize>,
    epsilon: Option<f64>,
    c_epsilon: Option<f64>,
    c: Option<f64>,
    as_json: bool,
) -> anyhow::Result<u8> {
    let hi = to.unwrap_or(n);
    if n == 0 || hi < n {
        bail!("need 1 <= n <= to");
    }
    let mut constants = BoundConstants::default();
    if let Some(e) = epsilon {
        constants.epsilon = e;
    }
    if let Some(ce) = c_epsilon {
        constants.c_epsilon = ce;
    }
    if let Some(cc) = c {
        constants.c = cc;
    }
    let rows: Vec<_> = (n..=hi)
        .map(|size| constructions::bounds_table(size, &constants))
        .collect();
    if as_json {
        emit_json(json_envelope("bounds", json!({ "rows": rows })));
    } else {
        for row in &rows {
            let known = constructions::known_min_length(row.n)
                .map(|v| v.to_string())
                .unwrap_or_else(|| "?".to_string());
            println!(
                "n={} connell={} newey={} zalinescu={} radomirovic={} ({}) kleitman={:.2} plaxton={:.2} tan={} known={}",
                row.n,
                row.connell_partial_sum,
                row.newey_upper,
                row.zalinescu_upper,
                row.radomirovic_upper,
                row.radomirovic_upper_ceil,
                row.kleitman_lower,
                row.plaxton_lower,
                row.tan_upper_ceil,
                known,
            );
        }
    }
    Ok(0)
}

fn cmd_connell(kind: KindArg, terms: usize, sums: bool, as_json: bool) -> anyhow::Result<u8> {
    let growth = match kind {
        KindArg::Arithmetic => BlockGrowth::Arithmetic,
        KindArg::Geometric => BlockGrowth::Geometric,
    };
    let seq = constructions::connell(growth, terms);
    let partial: Vec<u64> = seq
        .iter()
        .scan(0u64, |acc, &t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    if as_json {
        let mut body = json!({
            "kind": match kind { KindArg::Arithmetic => "arithmetic", KindArg::Geometric => "geometric" },
            "terms": seq,
        });
        if sums {
            body["partial_sums"] = json!(partial);
        }
        emit_json(json_envelope("connell", body));
    } else {
        println!(
            "{}",
            seq.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        );
        if sums {
            println!(
                "{}",
                partial
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// search / enumerate
// ---------------------------------------------------------------------------

fn cmd_search(
    n: usize,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
    no_dominance: bool,
    emit_witness: bool,
    as_json: bool,
) -> anyhow::Result<u8> {
    let options = SearchOptions {
        budget: Budget {
            max_nodes,
            max_seconds,
        },
        dominance: !no_dominance,
    };
    let outcome = search::min_length(n, &options)?;
    if as_json {
        emit_json(json_envelope("search", json!({ "outcome": outcome })));
    } else {
        match outcome.min_length {
            Some(min) => println!("min_length: {}", min),
            None => println!(
                "bracket: [{}, {}]",
                outcome.lower_bound, outcome.upper_bound
            ),
        }
        println!("exhausted: {}", outcome.exhausted);
        println!("nodes: {}", outcome.nodes_expanded);
        if emit_witness {
            if let Some(w) = &outcome.witness {
                println!("witness: {}", w.format());
            }
        }
    }
    Ok(if outcome.exhausted { 0 } else { EXIT_BUDGET })
}

fn cmd_enumerate(
    n: usize,
    canonical: bool,
    distributions: bool,
    allow_long: bool,
    as_json: bool,
) -> anyhow::Result<u8> {
    let words = search::enumerate_minimal(n, allow_long)?;
    let min_length = words.first().map(Sequence::len).unwrap_or(0);
    let mut histogram: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for w in &words {
        *histogram.entry(w.frequencies().multiset()).or_insert(0) += 1;
    }
    if as_json {
        let mut body = json!({
            "n": n,
            "count": words.len(),
            "min_length": min_length,
        });
        if canonical {
            body["words"] = json!(words);
        }
        if distributions {
            body["distributions"] = json!(histogram
                .iter()
                .map(|(multiset, count)| json!({"multiset": multiset, "count": count}))
                .collect::<Vec<_>>());
        }
        emit_json(json_envelope("enumerate", body));
    } else {
        println!("count: {}", words.len());
        println!("min_length: {}", min_length);
        if canonical {
            for w in &words {
                println!("{}", w.format());
            }
        }
        if distributions {
            for (multiset, count) in &histogram {
                println!(
                    "{}: {}",
                    multiset
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    count
                );
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify-paper
// ---------------------------------------------------------------------------

fn cmd_verify(
    budget_seconds: Option<f64>,
    include_n5: bool,
    inputs: &[PathBuf],
    as_json: bool,
) -> anyhow::Result<u8> {
    let report = verifier::run_suite(&SuiteOptions {
        include_n5,
        budget_seconds,
    });

    // User-supplied words run through the analyzer; their verdicts count
    // toward the exit code exactly like the suite's own.
    let mut input_reports: Vec<(String, StructureReport)> = Vec::new();
    for path in inputs {
        let (name, text) = read_source(path)?;
        for inp in parse_lines(&name, &text, None)? {
            let rep = verifier::analyze(&inp.word, &CheckOptions::default());
            input_reports.push((inp.label, rep));
        }
    }
    let input_failures: usize = input_reports
        .iter()
        .flat_map(|(_, r)| &r.verdicts)
        .filter(|v| v.status == Status::Fail)
        .count();
    let total_failures = report.failures + input_failures;

    if as_json {
        let inputs_json: Vec<Value> = input_reports
            .iter()
            .map(|(label, rep)| json!({"source": label, "report": rep}))
            .collect();
        emit_json(json_envelope(
            "verify-paper",
            json!({
                "suite": report,
                "inputs": inputs_json,
                "total_failures": total_failures,
                "passed": total_failures == 0,
            }),
        ));
    } else {
        for v in &report.verdicts {
            println!("{}", verdict_line(v));
        }
        for (label, rep) in &input_reports {
            for v in &rep.verdicts {
                println!("{}", prefixed(label, &verdict_line(v)));
            }
        }
        for outcome in &report.searches {
            println!(
                "search n={}: min={:?} bracket=[{}, {}] exhausted={}",
                outcome.n,
                outcome.min_length,
                outcome.lower_bound,
                outcome.upper_bound,
                outcome.exhausted
            );
        }
        for e in &report.enumerations {
            println!(
                "enumeration n={}: {} words, distributions {:?}",
                e.n, e.count, e.distributions
            );
        }
        println!(
            "removal chain: {:?}",
            report
                .removal_chain
                .iter()
                .map(|s| s.length)
                .collect::<Vec<_>>()
        );
        println!("{}", report.connell.line);
        for note in &report.notes {
            println!("note: {}", note);
        }
        let skipped = report
            .verdicts
            .iter()
            .filter(|v| v.status == Status::Inapplicable)
            .count();
        println!(
            "verdicts: {} ({} failed, {} inapplicable)",
            report.verdicts.len(),
            total_failures,
            skipped
        );
    }

    Ok(if total_failures > 0 {
        EXIT_FAIL
    } else if report.budget_truncated {
        EXIT_BUDGET
    } else {
        0
    })
}
