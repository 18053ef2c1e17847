//! Batch commands behind the `typen` binary.
//!
//! Every command writes one JSON document (or a flat text rendering of it)
//! that starts with the fully resolved configuration. Exit codes: 0 when all
//! checks pass, 1 when a mathematical check fails, 2 for usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::PrimeField;
use crate::exceptional::{construct, theorem_exceptional_report, ExceptionalParams};
use crate::maxclass::{
    constituents, constituents_via_lcs, fromlinrecur_bridge, jacobi_verify, search_sequences, SearchConfig,
    SequenceRecord,
};
use crate::polycheck::{classify_admissible_k, lemma_pairs_check};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "typen", version, about = "Graded Lie algebras of maximal class of type n over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Build an exceptional algebra and check it against the theorem.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Defaults to 3q + 2n.
        #[arg(long)]
        depth: Option<usize>,
        /// Allow n >= p (only construction-level claims are checked).
        #[arg(long)]
        construction_only: bool,
        /// Also write the extracted sequence as a sequence file.
        #[arg(long)]
        sequence_out: Option<PathBuf>,
    },
    /// Check a sequence file: Jacobi identity, constituents, lemma flags.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Highest degree to check; defaults to depth + n.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Brute-force the polynomial classification and the linear-factor pairs.
    Polyclassify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Enumerate sequence prefixes passing every Jacobi-derived constraint.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Only explore sequences whose first nonzero entry is 1.
        #[arg(long)]
        normalize: bool,
        /// Fixed initial entries, comma separated.
        #[arg(long, value_delimiter = ',')]
        seed: Vec<i64>,
    },
}

/// Result of a command: exit code and the document to emit.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
}

#[derive(Debug)]
pub struct UsageError(pub String);

fn usage<E: std::fmt::Display>(e: E) -> UsageError {
    UsageError(e.to_string())
}

fn verdict(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn execute(command: &Command) -> Result<Outcome, UsageError> {
    let mut config = serde_json::to_value(command).expect("config serializes");
    let (code, report) = match command {
        Command::Construct { p, c, m, n, depth, construction_only, sequence_out } => {
            let params = if *construction_only {
                ExceptionalParams::construction(*p, *c, *m, *n)
            } else {
                ExceptionalParams::theorem(*p, *c, *m, *n)
            }
            .map_err(usage)?;
            let depth = depth.unwrap_or(params.default_depth());
            config["depth"] = json!(depth);
            let report = theorem_exceptional_report(&params, depth).map_err(usage)?;
            if let Some(path) = sequence_out {
                let alg = construct(&params, depth).map_err(usage)?;
                let text = serde_json::to_string_pretty(&alg.sequence().to_record()).expect("record serializes");
                fs::write(path, text + "\n").map_err(usage)?;
            }
            (verdict(report.passed()), serde_json::to_value(&report).expect("report serializes"))
        }
        Command::Verify { input, degree_bound } => {
            let text = fs::read_to_string(input).map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
            let record: SequenceRecord = serde_json::from_str(&text).map_err(usage)?;
            let seq = record.into_sequence().map_err(usage)?;
            let bound = degree_bound.unwrap_or(seq.depth() + seq.n());
            config["degree_bound"] = json!(bound);
            let jac = jacobi_verify(&seq, bound).map_err(usage)?;
            let outcome = constituents(&seq);
            let bridge = outcome.report().and_then(|r| fromlinrecur_bridge(r, &seq));
            let lcs = constituents_via_lcs(&seq, bound).ok();
            let passed = jac.passed() && bridge.as_ref().is_none_or(|b| b.holds);
            let report = json!({
                "p": seq.field().p(),
                "n": seq.n(),
                "depth": seq.depth(),
                "jacobi": jac,
                "constituents": outcome,
                "bridge": bridge,
                "lcs": lcs,
                "passed": passed,
            });
            (verdict(passed), report)
        }
        Command::Polyclassify { p, n, kmax, budget } => {
            let field = PrimeField::new(*p).map_err(usage)?;
            let cls = classify_admissible_k(&field, *n, *kmax, *budget).map_err(usage)?;
            let pairs = lemma_pairs_check(&field, *kmax);
            let admissible: Vec<Value> = cls
                .admissible()
                .map(|e| {
                    let gs: Vec<Vec<u32>> =
                        e.polys.iter().map(|g| (0..*n as i64).map(|i| g.coeff(i).value()).collect()).collect();
                    json!({ "k": e.k, "g": gs })
                })
                .collect();
            let fp = |v: &[(u64, crate::arith::Fp)]| v.iter().map(|(k, a)| (*k, a.signed())).collect::<Vec<_>>();
            let passed = cls.verified() && pairs.verified();
            let report = json!({
                "admissible": admissible,
                "small_intervals": cls.small_intervals,
                "violations": cls.violations,
                "small_k_outside_menu": cls.small_k_outside_menu,
                "pairs": fp(&pairs.pairs),
                "strengthened_pairs": fp(&pairs.strengthened),
                "unexpected_pairs": fp(&pairs.unexpected),
                "unexpected_strengthened_pairs": fp(&pairs.unexpected_strengthened),
                "passed": passed,
            });
            (verdict(passed), report)
        }
        Command::Search { p, n, depth, budget, normalize, seed } => {
            let field = PrimeField::new(*p).map_err(usage)?;
            let cfg = SearchConfig {
                n: *n,
                depth: *depth,
                budget: *budget,
                normalize: *normalize,
                seed: seed.iter().map(|&v| field.elem(v)).collect(),
            };
            let report = search_sequences(&field, &cfg).map_err(usage)?;
            (verdict(report.menu_violations.is_empty()), serde_json::to_value(&report).expect("report serializes"))
        }
    };
    Ok(Outcome { code, document: json!({ "config": config, "report": report }) })
}

/// Flat `path: value` lines for every scalar in the document.
pub fn render_text(doc: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&path, v, out);
                }
            }
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = items.iter().map(Value::to_string).collect();
                out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            scalar => out.push_str(&format!("{prefix}: {scalar}\n")),
        }
    }
    let mut out = String::new();
    walk("", doc, &mut out);
    out
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("document serializes") + "\n",
        Format::Text => render_text(doc),
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let mut outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    outcome.document["config"]["format"] = json!(cli.format);
    let text = render(&outcome.document, cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    outcome.code
}
