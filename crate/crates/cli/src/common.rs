//! Shared command plumbing: flag types, input loading, report assembly,
//! brute-force size guards, and the exit-code mapping.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use fixbase_core::classes::ClassTag;
use fixbase_core::graph::ColoredGraph;
use fixbase_core::group::PermGroup;
use fixbase_core::io::{self, Report};
use fixbase_core::oracle::CLOSURE_CAP;
use fixbase_core::{Error, Result};
use num_bigint::BigUint;
use serde_json::{Map, Value};

/// Flags shared by every subcommand.
#[derive(Clone, Copy, Debug, Args)]
pub struct Flags {
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the instance generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run the brute-force cross-check and record agreement.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Replay the reported witness through the membership test.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Worker threads for subset scans; defaults to FIXBASE_JOBS, then to
    /// all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

/// Class names accepted by --class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Discrete,
    DiscreteL,
    Amenable,
    Compact,
    Refinable,
    Rigid,
}

impl ClassArg {
    /// The core tag, folding the --l round bound into discrete-l.
    pub fn tag(self, l: Option<usize>) -> Result<ClassTag> {
        if self == ClassArg::DiscreteL && l.is_none() {
            return Err(Error::InvalidInput("--class discrete-l needs --l <rounds>".into()));
        }
        if self != ClassArg::DiscreteL && l.is_some() {
            return Err(Error::InvalidInput("--l only applies to --class discrete-l".into()));
        }
        Ok(match self {
            ClassArg::Discrete => ClassTag::Discrete,
            ClassArg::DiscreteL => ClassTag::DiscreteWithin(l.expect("checked above")),
            ClassArg::Amenable => ClassTag::Amenable,
            ClassArg::Compact => ClassTag::Compact,
            ClassArg::Refinable => ClassTag::Refinable,
            ClassArg::Rigid => ClassTag::Rigid,
        })
    }

    /// The flag spelling, echoed in report parameters.
    pub fn name(self) -> &'static str {
        match self {
            ClassArg::Discrete => "discrete",
            ClassArg::DiscreteL => "discrete-l",
            ClassArg::Amenable => "amenable",
            ClassArg::Compact => "compact",
            ClassArg::Refinable => "refinable",
            ClassArg::Rigid => "rigid",
        }
    }
}

/// A finished subcommand: the JSON report, the matching human-readable
/// lines, and whether the decision came out no.
pub struct CmdOutput {
    pub report: Report,
    pub lines: Vec<String>,
    pub no: bool,
}

impl CmdOutput {
    /// Prints the report or the text lines and maps the outcome to an exit
    /// code: cross-check disagreement wins, then a no answer, then success.
    /// A reader that closes the pipe early does not change the outcome.
    pub fn finish(self, json: bool) -> ExitCode {
        let text = if json {
            serde_json::to_string_pretty(&self.report).expect("reports serialize")
        } else {
            self.lines.join("\n")
        };
        let mut stdout = std::io::stdout().lock();
        if let Err(e) = writeln!(stdout, "{text}") {
            if e.kind() != std::io::ErrorKind::BrokenPipe {
                eprintln!("error: stdout: {e}");
                return ExitCode::from(2);
            }
        }
        if self.report.oracle_agreement == Some(false) {
            ExitCode::from(3)
        } else if self.no {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    }
}

/// Reads an instance file, with `-` standing for stdin.
pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Loads and parses a graph file.
pub fn load_graph(path: &Path) -> Result<ColoredGraph> {
    io::parse_graph(&read_input(path)?)
}

/// Loads and parses a group file.
pub fn load_group(path: &Path) -> Result<PermGroup> {
    io::parse_group(&read_input(path)?)
}

/// Report skeleton with no witness and no cross-check verdict.
pub fn report(problem: &str, parameters: Map<String, Value>, answer: Value, work: u64) -> Report {
    Report {
        problem: problem.into(),
        parameters,
        answer,
        witness: None,
        work,
        oracle_agreement: None,
    }
}

/// Parameter map from a `json!` object literal.
pub fn params(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("parameters are an object"),
    }
}

/// Folds one cross-check outcome into the report's agreement field.
pub fn record_check(report: &mut Report, ok: bool) {
    report.oracle_agreement = Some(report.oracle_agreement.unwrap_or(true) && ok);
}

/// Space-separated vertex list for text output.
pub fn seq(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// The yes/no suffix for text output.
pub fn yn(answer: bool) -> &'static str {
    if answer {
        "yes"
    } else {
        "no"
    }
}

/// Refuses graphs whose color classes admit more candidate bijections than
/// the brute-force automorphism scan is willing to enumerate.
pub fn guard_aut_cap(g: &ColoredGraph) -> Result<()> {
    let mut class_sizes = vec![0u128; g.num_colors()];
    for v in 0..g.n() {
        class_sizes[g.color(v)] += 1;
    }
    let mut candidates: u128 = 1;
    for &size in &class_sizes {
        for factor in 1..=size {
            candidates = candidates.saturating_mul(factor);
        }
    }
    if candidates > CLOSURE_CAP as u128 {
        return Err(Error::SearchSpace(format!(
            "{candidates} candidate bijections exceed the oracle cap {CLOSURE_CAP}"
        )));
    }
    Ok(())
}

/// Refuses groups whose element count exceeds the closure cap.
pub fn guard_group_cap(group: &PermGroup) -> Result<()> {
    let order = group.order();
    if order > BigUint::from(CLOSURE_CAP) {
        return Err(Error::SearchSpace(format!(
            "group order {order} exceeds the oracle cap {CLOSURE_CAP}"
        )));
    }
    Ok(())
}

/// Writes text to a file, carrying the path in the error message.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Appends one JSON-lines manifest entry.
pub fn append_manifest(path: &Path, entry: &io::ManifestEntry) -> Result<()> {
    let line = serde_json::to_string(entry).expect("manifest entries serialize");
    let context = |e: std::io::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    let mut file = fs::OpenOptions::new()
        .append(true)
        .create(true)
        .open(path)
        .map_err(context)?;
    writeln!(file, "{line}").map_err(context)?;
    Ok(())
}

/// Applies --jobs, or the FIXBASE_JOBS environment default, to the global
/// worker pool. Does nothing when neither is set.
pub fn configure_jobs(flag: Option<usize>) -> Result<()> {
    let jobs = match flag {
        Some(n) => Some(n),
        None => match std::env::var("FIXBASE_JOBS") {
            Ok(v) => Some(v.parse().map_err(|_| {
                Error::InvalidInput(format!("FIXBASE_JOBS must be a thread count, got {v:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
