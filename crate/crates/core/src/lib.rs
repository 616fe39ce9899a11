//! Library for individualization-refinement on colored graphs and for
//! base/fixing-set problems on permutation groups.
//!
//! The main pieces:
//!
//! * [`graph`]: colored graphs, twin classes, bipartite complementation.
//! * [`refine`]: color refinement, refinement traces, individualization.
//! * [`perm`] / [`group`]: permutations, Schreier-Sims stabilizer chains,
//!   orbits, block systems, block kernels.
//! * [`base`]: exact and greedy minimum base, the fixed-parameter co-base
//!   solver.
//! * [`aut`]: automorphism groups via individualization-refinement search,
//!   fixing sets, the fixed-parameter co-fixing solver.
//! * [`classes`]: membership in the class hierarchy (discrete, bounded-round
//!   discrete, amenable, compact, refinable, rigid) and bounded search for
//!   individualization sets.
//! * [`bounded3`]: exact solver for graphs whose stable color classes have
//!   size at most 3.
//! * [`kernel`]: twin-class kernelization for the bounded-hiding
//!   discreteness problem.
//! * [`reduce`]: gadget constructions linking circuits, CNF formulas,
//!   set cover, groups and graphs.
//! * [`io`]: text formats for graphs, groups, circuits and CNF, plus JSON
//!   report and manifest types.
//! * [`oracle`]: brute-force reference implementations used for
//!   cross-checking; intentionally independent of the fast paths.

pub mod aut;
pub mod base;
pub mod bounded3;
pub mod classes;
pub mod combin;
pub mod graph;
pub mod group;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod perm;
pub mod reduce;
pub mod refine;

use thiserror::Error;

/// Errors reported by constructors, solvers and parsers.
#[derive(Debug, Error)]
pub enum Error {
    /// A vertex, point or color index is out of range.
    #[error("index {index} out of range (domain size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    /// An edge list contains a duplicate or a self-loop.
    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },
    /// Colors are not a dense range starting at 0.
    #[error("colors must form a dense range 0..c, missing color {missing}")]
    SparseColors { missing: usize },
    /// Two permutations or structures live on different domain sizes.
    #[error("domain size mismatch: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },
    /// An image list does not describe a bijection.
    #[error("not a permutation: {reason}")]
    NotAPermutation { reason: String },
    /// The requested cells do not satisfy the op's precondition.
    #[error("invalid cell selection: {0}")]
    InvalidCells(String),
    /// A block system is not valid for the group.
    #[error("invalid block system: {0}")]
    InvalidBlocks(String),
    /// The set is not invariant under the group, so restriction fails.
    #[error("set is not invariant under the group")]
    NotInvariant,
    /// Input graph is not 3-bounded where the solver requires it.
    #[error("stable color class of size {size} exceeds 3")]
    NotThreeBounded { size: usize },
    /// Membership query outside the decidable fragment.
    #[error("membership for {tag} is only decided on 3-bounded graphs")]
    UndecidedMembership { tag: &'static str },
    /// A reduction's size precondition fails.
    #[error("size bound violated: {0}")]
    SizeBound(String),
    /// A reduction input violates a structural precondition.
    #[error("invalid reduction input: {0}")]
    InvalidInput(String),
    /// A generator's build-time self-check failed.
    #[error("generator self-check failed: {0}")]
    GeneratorCheck(String),
    /// A text input could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The search space is too large to enumerate deterministically.
    #[error("search space too large: {0}")]
    SearchSpace(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
