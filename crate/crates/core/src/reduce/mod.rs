//! Constructive reductions between circuits, formulas, set cover, groups
//! and colored graphs.
//!
//! These are instance generators with known ground truth: each carries a
//! proof-backed equivalence between the source and target problem, so the
//! emitted instances double as cross-validation oracles for the solvers.

pub mod circuit;
pub mod domset;
pub mod gadgets;
pub mod satgroup;

pub use circuit::{
    circuit_to_graph, eval_circuit, random_circuit, weighted_sat_brute, CircuitGraph,
    CircuitVariant, GateOp, GateRef, MonotoneCircuit,
};
pub use domset::{domset_to_kdiscrete, DomsetInstance, DomsetVariant};
pub use gadgets::{PairGraph, Unit};
pub use satgroup::{
    group_to_rigid_graph, mini3sat_to_group, CnfFormula, RigidGraphInstance, SatGroupInstance,
    SetCoverInstance,
};
