//! Command-line front end. Parses one subcommand, runs the matching solver
//! or generator, and maps the outcome onto the exit-code contract:
//! 0 for yes or success, 1 for a no answer, 2 for usage and format errors,
//! 3 when a brute-force cross-check or a witness replay disagrees.
//!
//! All vertex and point indexing is 0-based, in files and in output.

mod common;
mod gen;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use common::{ClassArg, CmdOutput, Flags};
use fixbase_core::Result;
use gen::{CircuitArg, DomsetArg};

#[derive(Parser)]
#[command(
    name = "fixbase",
    version,
    about = "Color refinement, base and fixing-set solvers, and instance generators",
    after_help = "Exit codes: 0 yes/success, 1 no, 2 usage or format error, \
                  3 cross-check disagreement. Instance files use 0-based indexing; \
                  pass - to read from stdin."
)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Refine a colored graph to its stable coloring.
    Refine {
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Decide whether a graph lies in a class.
    Classify {
        /// Target class.
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Round bound for --class discrete-l.
        #[arg(long)]
        l: Option<usize>,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Find an exact minimum base of a permutation group.
    MinBase {
        /// Group file, or - for stdin.
        file: PathBuf,
    },
    /// Build a base greedily, one maximally-splitting point at a time.
    GreedyBase {
        /// Group file, or - for stdin.
        file: PathBuf,
    },
    /// Decide whether k points can be left out of a base.
    Cobase {
        /// Number of points to leave out.
        #[arg(long)]
        k: usize,
        /// Group file, or - for stdin.
        file: PathBuf,
    },
    /// Find an exact minimum fixing set of a graph.
    MinFixingSet {
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Decide whether k vertices can be left out of a fixing set.
    Cofix {
        /// Number of vertices to leave out.
        #[arg(long)]
        k: usize,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Search for k vertices whose individualization reaches a class.
    KSearch {
        /// Target class.
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Number of vertices to individualize.
        #[arg(long)]
        k: usize,
        /// Round bound for --class discrete-l.
        #[arg(long)]
        l: Option<usize>,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Search for k vertices bringing stable color valence down to d.
    ColorValence {
        /// Number of vertices to individualize.
        #[arg(long)]
        k: usize,
        /// Valence target.
        #[arg(long)]
        d: usize,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Decide whether individualizing all but k vertices reaches
    /// discreteness.
    NkDiscrete {
        /// Number of vertices left untouched.
        #[arg(long)]
        k: usize,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Shrink a hidden-discreteness instance to its twin-class kernel.
    Kernelize {
        /// Number of vertices left untouched.
        #[arg(long)]
        k: usize,
        /// Write the kernel graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Find the minimum individualization set for a class on a 3-bounded
    /// graph.
    #[command(name = "solve-3bounded")]
    Solve3Bounded {
        /// Target class.
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Round bound for --class discrete-l.
        #[arg(long)]
        l: Option<usize>,
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Compute the automorphism group of a graph.
    Autgroup {
        /// Graph file, or - for stdin.
        file: PathBuf,
    },
    /// Emit the standalone two-pair coupling gadget.
    GenCfi {
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a labeled manifest line to this JSON-lines file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Sample a monotone circuit and compile it to a pair-class graph.
    GenCircuit {
        /// Graph encoding to build.
        #[arg(long, value_enum)]
        variant: CircuitArg,
        /// Circuit input count.
        #[arg(long, default_value_t = 3)]
        inputs: usize,
        /// Circuit gate count.
        #[arg(long, default_value_t = 4)]
        gates: usize,
        /// Assignment weight the label refers to.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a labeled manifest line to this JSON-lines file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Sample a formula and emit its set-cover coordinate-flip group.
    GenSatGroup {
        /// Variable count of the sampled formula.
        #[arg(long, default_value_t = 3)]
        vars: usize,
        /// Clause count of the sampled formula.
        #[arg(long, default_value_t = 2)]
        clauses: usize,
        /// Block count of the reduction.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Capacity parameter bounding each block to log2(n) variables.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a labeled manifest line to this JSON-lines file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Sample a formula and emit the rigid-graph realization of its group.
    GenRigidGraph {
        /// Variable count of the sampled formula.
        #[arg(long, default_value_t = 3)]
        vars: usize,
        /// Clause count of the sampled formula.
        #[arg(long, default_value_t = 2)]
        clauses: usize,
        /// Block count of the reduction.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Capacity parameter bounding each block to log2(n) variables.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a labeled manifest line to this JSON-lines file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Sample a graph and compile a dominating-set question into a
    /// bounded-round discreteness question.
    GenDomset {
        /// Which encoding to build.
        #[arg(long, value_enum)]
        variant: DomsetArg,
        /// Refinement round budget of the output question.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Vertex count of the sampled graph.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Edge count of the sampled graph.
        #[arg(long, default_value_t = 4)]
        edges: usize,
        /// Dominating set size asked about.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a labeled manifest line to this JSON-lines file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

fn run(cmd: Cmd, flags: &Flags) -> Result<CmdOutput> {
    match cmd {
        Cmd::Refine { file } => solve::refine(&file, flags),
        Cmd::Classify { class, l, file } => solve::classify(&file, class, l, flags),
        Cmd::MinBase { file } => solve::min_base(&file, flags),
        Cmd::GreedyBase { file } => solve::greedy(&file, flags),
        Cmd::Cobase { k, file } => solve::cobase(&file, k, flags),
        Cmd::MinFixingSet { file } => solve::min_fixing(&file, flags),
        Cmd::Cofix { k, file } => solve::cofix(&file, k, flags),
        Cmd::KSearch { class, k, l, file } => solve::k_search(&file, class, k, l, flags),
        Cmd::ColorValence { k, d, file } => solve::valence(&file, k, d, flags),
        Cmd::NkDiscrete { k, file } => solve::nk_discrete(&file, k, flags),
        Cmd::Kernelize { k, out, file } => solve::kernelize(&file, k, out.as_deref(), flags),
        Cmd::Solve3Bounded { class, l, file } => solve::bounded(&file, class, l, flags),
        Cmd::Autgroup { file } => solve::autgroup(&file, flags),
        Cmd::GenCfi { out, manifest } => gen::cfi(out.as_deref(), manifest.as_deref(), flags),
        Cmd::GenCircuit { variant, inputs, gates, k, out, manifest } => {
            gen::circuit(variant, inputs, gates, k, out.as_deref(), manifest.as_deref(), flags)
        }
        Cmd::GenSatGroup { vars, clauses, k, n, out, manifest } => {
            gen::sat_group(vars, clauses, k, n, out.as_deref(), manifest.as_deref(), flags)
        }
        Cmd::GenRigidGraph { vars, clauses, k, n, out, manifest } => {
            gen::rigid_graph(vars, clauses, k, n, out.as_deref(), manifest.as_deref(), flags)
        }
        Cmd::GenDomset { variant, l, n, edges, k, out, manifest } => {
            gen::domset(variant, l, n, edges, k, out.as_deref(), manifest.as_deref(), flags)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = common::configure_jobs(cli.flags.jobs) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.cmd, &cli.flags) {
        Ok(out) => out.finish(cli.flags.json),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
