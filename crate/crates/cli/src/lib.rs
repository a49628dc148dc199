//! Command-line front end for `knotqa`.
//!
//! Exit codes: 0 when everything was processed, 1 for parse or usage errors,
//! 2 when at least one computation ran out of budget.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotqa::corpus::bundled_entry;
use knotqa::{
    classify_with, parse_corpus, parse_notation, Certifier, CorpusEntry, Error, LinkDiagram, Report, SharedCache,
    SkeinEngine, DEFAULT_NODE_BUDGET,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "knotqa",
    version,
    about = "Q-polynomial, determinant and quasi-alternating checks for links"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Node budget for skein recursion and certificate search
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    max_nodes: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Suppress the header row and diagnostics on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    /// Aligned `field: value` lines
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Q-polynomial and its degree
    Qpoly { input: String },
    /// Print the determinant and the value recovered from Q(2)
    Det { input: String },
    /// Print the full obstruction report
    Classify { input: String },
    /// Search for a resolution-tree certificate
    Certify { input: String },
    /// Classify every entry of a corpus file (`-` reads stdin)
    Batch {
        file: PathBuf,
        #[arg(long)]
        parallel: bool,
    },
}

/// Input as a bundled corpus name, a `pd:`/`braid:` notation, or bare PD text.
pub fn resolve_input(input: &str) -> Result<(String, LinkDiagram), Error> {
    let s = input.trim();
    if s.starts_with("pd:") || s.starts_with("braid:") {
        return Ok(("input".into(), parse_notation(s)?));
    }
    if let Some(e) = bundled_entry(s) {
        return Ok((e.name, e.parsed));
    }
    if s.contains(['(', '[', '{']) || s.starts_with("loops=") {
        return Ok(("input".into(), LinkDiagram::parse_pd(s)?));
    }
    Err(Error::Notation(format!(
        "{s:?} is not a bundled name, pd:/braid: notation or PD text"
    )))
}

const REPORT_FIELDS: [&str; 8] = [
    "name",
    "crossings",
    "det",
    "det_q",
    "deg_q",
    "verdict",
    "theorem_cited",
    "q",
];

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn fields(v: &Value, names: &[&str]) -> Vec<String> {
    names.iter().map(|n| cell(&v[*n])).collect()
}

fn report_value(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Emits one record per value with the given columns.
fn emit(out: &mut dyn Write, format: Format, quiet: bool, columns: &[&str], rows: &[Value]) -> io::Result<()> {
    match format {
        Format::Json => {
            if rows.len() == 1 {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows[0])?)
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(rows)?)
            }
        }
        Format::Tsv => {
            if !quiet {
                writeln!(out, "{}", columns.join("\t"))?;
            }
            for r in rows {
                writeln!(out, "{}", fields(r, columns).join("\t"))?;
            }
            Ok(())
        }
        Format::Text => {
            let width = columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                for (c, v) in columns.iter().zip(fields(r, columns)) {
                    writeln!(out, "{c:<width$}  {v}")?;
                }
            }
            Ok(())
        }
    }
}

fn error_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

fn classify_entry(name: &str, d: &LinkDiagram, budget: u64, cache: Option<&SharedCache>) -> Result<Report, Error> {
    let mut engine = SkeinEngine::new().with_budget(budget);
    if let Some(c) = cache {
        engine = engine.with_shared(c);
    }
    classify_with(&mut engine, name, d)
}

/// Classifies each entry; failures are kept in place.
pub fn batch_reports(entries: &[CorpusEntry], budget: u64, parallel: bool) -> Vec<Result<Report, Error>> {
    let cache = SharedCache::new();
    let one = |e: &CorpusEntry| classify_entry(&e.name, &e.parsed, budget, Some(&cache));
    if parallel {
        entries.par_iter().map(one).collect()
    } else {
        entries.iter().map(one).collect()
    }
}

#[derive(Serialize)]
struct FailedEntry<'a> {
    name: &'a str,
    verdict: &'static str,
    error: String,
}

fn failed_value(name: &str, e: &Error) -> Value {
    let verdict = if e.is_budget() { "BudgetExceeded" } else { "Error" };
    serde_json::to_value(FailedEntry {
        name,
        verdict,
        error: e.to_string(),
    })
    .expect("serializable")
}

fn read_source(file: &PathBuf) -> io::Result<String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let GlobalOpts {
        max_nodes,
        format,
        quiet,
    } = cli.opts;
    let single = |input: &str, err: &mut dyn Write| -> io::Result<Result<(String, LinkDiagram), i32>> {
        match resolve_input(input) {
            Ok(v) => Ok(Ok(v)),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(Err(EXIT_USAGE))
            }
        }
    };
    match cli.command {
        Command::Qpoly { input } => {
            let (name, d) = match single(&input, err)? {
                Ok(v) => v,
                Err(code) => return Ok(code),
            };
            let mut engine = SkeinEngine::new().with_budget(max_nodes);
            let q = match engine.evaluate(&d) {
                Ok(q) => q,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(error_code(&e));
                }
            };
            let stats = engine.stats();
            if !quiet && format != Format::Json {
                writeln!(
                    err,
                    "nodes expanded {}, cache hits {}, max depth {}",
                    stats.nodes_expanded, stats.cache_hits, stats.max_depth
                )?;
            }
            let row = json!({ "name": name, "degree": q.degree(), "q": q.to_string(), "stats": stats });
            emit(out, format, quiet, &["name", "degree", "q"], &[row])?;
        }
        Command::Det { input } => {
            let (name, d) = match single(&input, err)? {
                Ok(v) => v,
                Err(code) => return Ok(code),
            };
            match classify_entry(&name, &d, max_nodes, None) {
                Ok(r) => {
                    if !r.dets_agree() && !quiet {
                        writeln!(err, "warning: Goeritz determinant {} but Q(2) gives {}", r.det, r.det_q)?;
                    }
                    let v = report_value(&r);
                    let row = json!({ "name": v["name"], "det": v["det"], "det_q": v["det_q"] });
                    emit(out, format, quiet, &["name", "det", "det_q"], &[row])?;
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(error_code(&e));
                }
            }
        }
        Command::Classify { input } => {
            let (name, d) = match single(&input, err)? {
                Ok(v) => v,
                Err(code) => return Ok(code),
            };
            match classify_entry(&name, &d, max_nodes, None) {
                Ok(r) => emit(out, format, quiet, &REPORT_FIELDS, &[report_value(&r)])?,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(error_code(&e));
                }
            }
        }
        Command::Certify { input } => {
            let (name, d) = match single(&input, err)? {
                Ok(v) => v,
                Err(code) => return Ok(code),
            };
            let mut certifier = Certifier::new().with_budget(max_nodes);
            let found = match certifier.certify(&d) {
                Ok(f) => f,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(error_code(&e));
                }
            };
            if !quiet && format != Format::Json {
                writeln!(err, "nodes expanded {}", certifier.nodes_expanded())?;
            }
            match format {
                Format::Json => {
                    let v = json!({
                        "name": name,
                        "certified": found.is_some(),
                        "certificate": found.as_deref(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Tsv | Format::Text => match found {
                    Some(c) => write!(out, "{}", c.to_text())?,
                    None => writeln!(out, "no certificate for {name} in this diagram")?,
                },
            }
        }
        Command::Batch { file, parallel } => {
            let text = match read_source(&file) {
                Ok(t) => t,
                Err(e) => {
                    writeln!(err, "error: cannot read {}: {e}", file.display())?;
                    return Ok(EXIT_USAGE);
                }
            };
            let entries = match parse_corpus(&text) {
                Ok(v) => v,
                Err(e) => {
                    writeln!(err, "error: {}: {e}", file.display())?;
                    return Ok(EXIT_USAGE);
                }
            };
            let mut code = EXIT_OK;
            let rows: Vec<Value> = entries
                .iter()
                .zip(batch_reports(&entries, max_nodes, parallel))
                .map(|(e, r)| match r {
                    Ok(r) => report_value(&r),
                    Err(x) => {
                        code = code.max(error_code(&x));
                        failed_value(&e.name, &x)
                    }
                })
                .collect();
            if format == Format::Json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                emit(out, format, quiet, &REPORT_FIELDS, &rows)?;
            }
            if code != EXIT_OK && !quiet {
                writeln!(err, "some entries could not be completed")?;
            }
            return Ok(code);
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
