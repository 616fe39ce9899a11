//! Monotone circuits and their encodings as pair-class graphs.
//!
//! A circuit maps to a graph with one pair per gate: and gates become
//! coupling gadgets, or gates become two implication gadgets, and the
//! output feeds a distinguished pair through one more implication. After
//! individualizing the pairs of a true input set, color refinement
//! distinguishes exactly the pairs of gates evaluating to one. The
//! feedback variant wires the output pair back onto every input; the
//! replicated variant runs one feedback-free copy per input behind a shared
//! bank of outer input pairs, making weight-k satisfiability equivalent to
//! k-vertex discretability of the graph.

use rand::Rng;

use crate::graph::ColoredGraph;
use crate::reduce::gadgets::PairGraph;
use crate::{combin, Error, Result};

/// Operand of a gate: an input variable or an earlier gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateRef {
    /// Input variable by index.
    Input(usize),
    /// Gate by index; must precede the gate using it.
    Gate(usize),
}

/// Gate operation; the circuit model is monotone, so there is no negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateOp {
    And,
    Or,
}

/// Fan-in-two monotone boolean circuit.
#[derive(Clone, Debug)]
pub struct MonotoneCircuit {
    num_inputs: usize,
    gates: Vec<(GateOp, GateRef, GateRef)>,
    output: usize,
}

impl MonotoneCircuit {
    /// Validates the wiring: gates may only reference inputs and strictly
    /// earlier gates, and the output must name an existing gate.
    ///
    /// # Errors
    /// Returns an error when the circuit has no inputs or no gates, when a
    /// reference points forward or out of range, or when the output index
    /// is out of range.
    pub fn new(
        num_inputs: usize,
        gates: Vec<(GateOp, GateRef, GateRef)>,
        output: usize,
    ) -> Result<Self> {
        if num_inputs == 0 {
            return Err(Error::InvalidInput("circuit needs at least one input".into()));
        }
        if gates.is_empty() {
            return Err(Error::InvalidInput("circuit needs at least one gate".into()));
        }
        for (idx, &(_, a, b)) in gates.iter().enumerate() {
            for r in [a, b] {
                match r {
                    GateRef::Input(i) if i >= num_inputs => {
                        return Err(Error::IndexOutOfRange { index: i, size: num_inputs });
                    }
                    GateRef::Gate(g) if g >= idx => {
                        return Err(Error::InvalidInput(format!(
                            "gate {idx} references gate {g}, which is not defined before it"
                        )));
                    }
                    _ => {}
                }
            }
        }
        if output >= gates.len() {
            return Err(Error::IndexOutOfRange { index: output, size: gates.len() });
        }
        Ok(MonotoneCircuit { num_inputs, gates, output })
    }

    /// Number of input variables.
    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    /// The gates in definition order.
    pub fn gates(&self) -> &[(GateOp, GateRef, GateRef)] {
        &self.gates
    }

    /// Index of the output gate.
    pub fn output(&self) -> usize {
        self.output
    }
}

/// Evaluates the circuit on an assignment.
///
/// # Panics
/// Panics when the assignment length differs from the input count.
pub fn eval_circuit(c: &MonotoneCircuit, assignment: &[bool]) -> bool {
    assert_eq!(assignment.len(), c.num_inputs, "assignment length");
    let mut values = Vec::with_capacity(c.gates.len());
    for &(op, a, b) in &c.gates {
        let resolve = |r: GateRef| match r {
            GateRef::Input(i) => assignment[i],
            GateRef::Gate(g) => values[g],
        };
        let (va, vb) = (resolve(a), resolve(b));
        values.push(match op {
            GateOp::And => va && vb,
            GateOp::Or => va || vb,
        });
    }
    values[c.output]
}

/// Lexicographically least weight-`k` satisfying assignment, as the sorted
/// set of true input indices, or `None` when no such assignment exists.
pub fn weighted_sat_brute(c: &MonotoneCircuit, k: usize) -> Option<Vec<usize>> {
    let mut assignment = vec![false; c.num_inputs];
    for subset in combin::Subsets::new(c.num_inputs, k) {
        assignment.fill(false);
        for &i in &subset {
            assignment[i] = true;
        }
        if eval_circuit(c, &assignment) {
            return Some(subset);
        }
    }
    None
}

/// Which graph encoding to build from a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitVariant {
    /// One copy of the gate gadgets; splits mirror gate values.
    Plain,
    /// Plain plus implications from the output pair back onto every input
    /// pair, so distinguishing the output discretizes the whole graph.
    Feedback,
    /// Outer input pairs feeding one plain copy per input, each copy's
    /// output implying its own outer pair.
    Replicated,
}

/// Pair ids of one plain copy inside a circuit graph.
#[derive(Clone, Debug)]
pub struct CircuitCopy {
    /// Input pair per variable, in variable order.
    pub inputs: Vec<usize>,
    /// Gate pair per gate, in definition order.
    pub gates: Vec<usize>,
    /// The pair fed by the copy's output gate.
    pub output_q: usize,
}

/// A circuit compiled to a pair-class graph.
#[derive(Clone, Debug)]
pub struct CircuitGraph {
    /// Which encoding was built.
    pub variant: CircuitVariant,
    /// The underlying builder, for structural analysis.
    pub pairs: PairGraph,
    /// Pair per input variable. For the replicated variant these are the
    /// outer pairs; otherwise they are the single copy's input pairs.
    pub input_pairs: Vec<usize>,
    /// The evaluation copies; one for plain and feedback, one per input
    /// for replicated.
    pub copies: Vec<CircuitCopy>,
}

impl CircuitGraph {
    /// The built colored graph.
    pub fn graph(&self) -> ColoredGraph {
        self.pairs.build_graph()
    }

    /// One vertex per listed input variable, from the variable's pair.
    /// Individualizing these encodes setting those inputs to one.
    pub fn witness_vertices(&self, true_inputs: &[usize]) -> Vec<usize> {
        true_inputs
            .iter()
            .map(|&i| self.pairs.pair_vertices(self.input_pairs[i])[0])
            .collect()
    }
}

fn build_copy(pg: &mut PairGraph, c: &MonotoneCircuit, inputs: &[usize]) -> Result<CircuitCopy> {
    let mut gate_pairs = Vec::with_capacity(c.gates().len());
    for (idx, &(op, a, b)) in c.gates().iter().enumerate() {
        let pair_of = |r: GateRef| match r {
            GateRef::Input(i) => inputs[i],
            GateRef::Gate(g) => gate_pairs[g],
        };
        let (pa, pb) = (pair_of(a), pair_of(b));
        let g = pg.add_pair();
        match op {
            GateOp::And => {
                if pa == pb {
                    return Err(Error::InvalidInput(format!(
                        "and gate {idx} repeats one operand; its coupling gadget needs \
                         two distinct pairs"
                    )));
                }
                pg.add_cfi(pa, pb, g)?;
            }
            GateOp::Or => {
                pg.add_imp(pa, g)?;
                pg.add_imp(pb, g)?;
            }
        }
        gate_pairs.push(g);
    }
    let q = pg.add_pair();
    pg.add_imp(gate_pairs[c.output()], q)?;
    Ok(CircuitCopy { inputs: inputs.to_vec(), gates: gate_pairs, output_q: q })
}

/// Compiles a circuit to the chosen graph encoding.
///
/// # Errors
/// Returns an error when an and gate uses the same operand twice; the
/// coupling gadget needs two distinct pairs, while evaluation does not
/// care. Every other valid circuit builds.
pub fn circuit_to_graph(c: &MonotoneCircuit, variant: CircuitVariant) -> Result<CircuitGraph> {
    let mut pg = PairGraph::new();
    let n = c.num_inputs();
    let input_pairs: Vec<usize> = (0..n).map(|_| pg.add_pair()).collect();
    let copies = match variant {
        CircuitVariant::Plain => vec![build_copy(&mut pg, c, &input_pairs)?],
        CircuitVariant::Feedback => {
            let copy = build_copy(&mut pg, c, &input_pairs)?;
            for &p in &input_pairs {
                pg.add_imp(copy.output_q, p)?;
            }
            vec![copy]
        }
        CircuitVariant::Replicated => {
            let mut copies = Vec::with_capacity(n);
            for j in 0..n {
                let copy_inputs: Vec<usize> = (0..n).map(|_| pg.add_pair()).collect();
                for i in 0..n {
                    pg.add_imp(input_pairs[i], copy_inputs[i])?;
                }
                let copy = build_copy(&mut pg, c, &copy_inputs)?;
                pg.add_imp(copy.output_q, input_pairs[j])?;
                copies.push(copy);
            }
            copies
        }
    };
    Ok(CircuitGraph { variant, pairs: pg, input_pairs, copies })
}

/// Samples a random circuit with exactly these input and gate counts.
/// Operands are distinct whenever at least two references are available,
/// so every sampled circuit compiles under [`circuit_to_graph`]; the
/// output is the last gate.
pub fn random_circuit<R: Rng>(rng: &mut R, num_inputs: usize, num_gates: usize) -> MonotoneCircuit {
    assert!(num_inputs >= 1 && num_gates >= 1);
    let mut gates = Vec::with_capacity(num_gates);
    for g in 0..num_gates {
        let pool = num_inputs + g;
        let as_ref = |r: usize| {
            if r < num_inputs {
                GateRef::Input(r)
            } else {
                GateRef::Gate(r - num_inputs)
            }
        };
        if pool == 1 {
            gates.push((GateOp::Or, GateRef::Input(0), GateRef::Input(0)));
            continue;
        }
        let op = if rng.gen_bool(0.5) { GateOp::And } else { GateOp::Or };
        let a = rng.gen_range(0..pool);
        let mut b = rng.gen_range(0..pool - 1);
        if b >= a {
            b += 1;
        }
        gates.push((op, as_ref(a), as_ref(b)));
    }
    MonotoneCircuit::new(num_inputs, gates, num_gates - 1)
        .expect("sampled wiring is always valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{k_class_search, ClassTag};
    use crate::oracle;
    use crate::reduce::gadgets::{
        self, flip_basis, k_discrete_units, k_refinable_units, SplitAnalysis, Unit,
    };
    use crate::refine;

    fn and2() -> MonotoneCircuit {
        MonotoneCircuit::new(
            2,
            vec![(GateOp::And, GateRef::Input(0), GateRef::Input(1))],
            0,
        )
        .unwrap()
    }

    fn or2() -> MonotoneCircuit {
        MonotoneCircuit::new(2, vec![(GateOp::Or, GateRef::Input(0), GateRef::Input(1))], 0)
            .unwrap()
    }

    fn or1() -> MonotoneCircuit {
        MonotoneCircuit::new(1, vec![(GateOp::Or, GateRef::Input(0), GateRef::Input(0))], 0)
            .unwrap()
    }

    /// Three inputs, a reused input and a gate-of-gate reference.
    fn mixed3() -> MonotoneCircuit {
        MonotoneCircuit::new(
            3,
            vec![
                (GateOp::Or, GateRef::Input(0), GateRef::Input(1)),
                (GateOp::And, GateRef::Gate(0), GateRef::Input(2)),
                (GateOp::Or, GateRef::Gate(1), GateRef::Input(0)),
            ],
            2,
        )
        .unwrap()
    }

    fn and3() -> MonotoneCircuit {
        MonotoneCircuit::new(
            3,
            vec![
                (GateOp::And, GateRef::Input(0), GateRef::Input(1)),
                (GateOp::And, GateRef::Gate(0), GateRef::Input(2)),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_bad_wiring() {
        let fwd = MonotoneCircuit::new(
            1,
            vec![(GateOp::Or, GateRef::Gate(0), GateRef::Input(0))],
            0,
        );
        assert!(fwd.is_err());
        let missing_input = MonotoneCircuit::new(
            1,
            vec![(GateOp::Or, GateRef::Input(1), GateRef::Input(0))],
            0,
        );
        assert!(missing_input.is_err());
        let bad_output = MonotoneCircuit::new(
            1,
            vec![(GateOp::Or, GateRef::Input(0), GateRef::Input(0))],
            1,
        );
        assert!(bad_output.is_err());
        assert!(MonotoneCircuit::new(0, vec![], 0).is_err());
    }

    #[test]
    fn evaluation_and_weighted_search() {
        assert!(eval_circuit(&and2(), &[true, true]));
        assert!(!eval_circuit(&and2(), &[true, false]));
        assert!(eval_circuit(&mixed3(), &[true, false, false]));
        assert!(!eval_circuit(&mixed3(), &[false, true, false]));

        assert_eq!(weighted_sat_brute(&or2(), 1), Some(vec![0]));
        assert_eq!(weighted_sat_brute(&and2(), 1), None);
        assert_eq!(weighted_sat_brute(&and2(), 2), Some(vec![0, 1]));
        assert_eq!(weighted_sat_brute(&mixed3(), 1), Some(vec![0]));
        assert_eq!(weighted_sat_brute(&and3(), 2), None);
        assert_eq!(weighted_sat_brute(&and3(), 3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn and_gate_with_repeated_operand_does_not_compile() {
        let c = MonotoneCircuit::new(
            1,
            vec![(GateOp::And, GateRef::Input(0), GateRef::Input(0))],
            0,
        )
        .unwrap();
        assert!(eval_circuit(&c, &[true]));
        assert!(circuit_to_graph(&c, CircuitVariant::Plain).is_err());
    }

    /// Expected split state of every pair in a plain encoding under an
    /// assignment: gate pairs carry their gate's value and the implication
    /// helper pairs mirror their matched source.
    fn expected_splits(cg: &CircuitGraph, c: &MonotoneCircuit, assignment: &[bool]) -> Vec<bool> {
        let mut values = Vec::new();
        for &(op, a, b) in c.gates() {
            let resolve = |r: GateRef| match r {
                GateRef::Input(i) => assignment[i],
                GateRef::Gate(g) => values[g],
            };
            let v = match op {
                GateOp::And => resolve(a) && resolve(b),
                GateOp::Or => resolve(a) || resolve(b),
            };
            values.push(v);
        }
        let mut expected = vec![false; cg.pairs.num_pairs()];
        for (i, &p) in cg.input_pairs.iter().enumerate() {
            expected[p] = assignment[i];
        }
        let copy = &cg.copies[0];
        for (g, &p) in copy.gates.iter().enumerate() {
            expected[p] = values[g];
        }
        expected[copy.output_q] = values[c.output()];
        for &(source, helper) in cg.pairs.matchings() {
            expected[helper] = expected[source];
        }
        expected
    }

    #[test]
    fn plain_encoding_distinguishes_exactly_the_true_gates() {
        for c in [and2(), or2(), mixed3()] {
            let cg = circuit_to_graph(&c, CircuitVariant::Plain).unwrap();
            let analysis = SplitAnalysis::new(&cg.pairs);
            for bits in 0..1u32 << c.num_inputs() {
                let assignment: Vec<bool> =
                    (0..c.num_inputs()).map(|i| bits >> i & 1 == 1).collect();
                let seeds: Vec<Unit> = cg
                    .input_pairs
                    .iter()
                    .zip(&assignment)
                    .filter(|&(_, &on)| on)
                    .map(|(&p, _)| Unit::Pair(p))
                    .collect();
                assert_eq!(
                    analysis.closure(&seeds),
                    expected_splits(&cg, &c, &assignment),
                    "assignment {assignment:?}"
                );
            }
        }
    }

    #[test]
    fn plain_encoding_spot_checks_through_refiner() {
        let cg = circuit_to_graph(&and2(), CircuitVariant::Plain).unwrap();
        let g = cg.graph();

        let both = refine::individualize(&g, &cg.witness_vertices(&[0, 1])).unwrap();
        assert!(refine::is_discrete(&both));

        let first = refine::individualize(&g, &cg.witness_vertices(&[0])).unwrap();
        let trace = refine::stable_coloring(&first);
        let stable = trace.stable();
        let [q0, q1] = cg.pairs.pair_vertices(cg.copies[0].output_q);
        assert_eq!(stable.cell_of(q0), stable.cell_of(q1));
        let [g0, g1] = cg.pairs.pair_vertices(cg.copies[0].gates[0]);
        assert_eq!(stable.cell_of(g0), stable.cell_of(g1));
    }

    #[test]
    fn feedback_output_individualization_discretizes() {
        for c in [and2(), mixed3()] {
            let cg = circuit_to_graph(&c, CircuitVariant::Feedback).unwrap();
            let g = cg.graph();
            let q = cg.pairs.pair_vertices(cg.copies[0].output_q)[0];
            let ind = refine::individualize(&g, &[q]).unwrap();
            assert!(refine::is_discrete(&ind));
        }
    }

    #[test]
    fn flip_spaces_of_the_three_variants() {
        let cg = circuit_to_graph(&and2(), CircuitVariant::Plain).unwrap();
        assert_eq!(flip_basis(&cg.pairs).len(), 2);
        assert_eq!(oracle::brute_automorphisms(&cg.graph()).len(), 4);

        let cg = circuit_to_graph(&and2(), CircuitVariant::Feedback).unwrap();
        assert!(flip_basis(&cg.pairs).is_empty());

        let cg = circuit_to_graph(&and2(), CircuitVariant::Replicated).unwrap();
        assert!(flip_basis(&cg.pairs).is_empty());
    }

    #[test]
    fn replicated_decider_matches_refiner_scan() {
        for c in [or1(), and2()] {
            let cg = circuit_to_graph(&c, CircuitVariant::Replicated).unwrap();
            let g = cg.graph();
            for k in 0..=2 {
                let fast = k_discrete_units(&cg.pairs, k);
                let slow = k_class_search(&g, k, ClassTag::Discrete).unwrap();
                assert_eq!(fast.is_some(), slow.answer, "discrete k={k}");
                let fast = k_refinable_units(&cg.pairs, k);
                let slow = k_class_search(&g, k, ClassTag::Refinable).unwrap();
                assert_eq!(fast.is_some(), slow.answer, "refinable k={k}");
            }
        }
    }

    #[test]
    fn dichotomy_on_fixed_circuits() {
        let cases: [(MonotoneCircuit, usize, bool); 5] = [
            (or2(), 1, true),
            (and2(), 1, false),
            (and2(), 2, true),
            (and3(), 2, false),
            (mixed3(), 1, true),
        ];
        for (c, k, expect) in cases {
            let sat = weighted_sat_brute(&c, k);
            assert_eq!(sat.is_some(), expect);
            let cg = circuit_to_graph(&c, CircuitVariant::Replicated).unwrap();
            assert_eq!(k_discrete_units(&cg.pairs, k).is_some(), expect, "discrete k={k}");
            assert_eq!(k_refinable_units(&cg.pairs, k).is_some(), expect, "refinable k={k}");
            if let Some(true_inputs) = sat {
                let ind = refine::individualize(&cg.graph(), &cg.witness_vertices(&true_inputs))
                    .unwrap();
                assert!(refine::is_discrete(&ind), "witness replay k={k}");
            }
        }
    }

    #[test]
    fn replicated_closure_matches_refinement_on_single_input_circuit() {
        let cg = circuit_to_graph(&or1(), CircuitVariant::Replicated).unwrap();
        let g = cg.graph();
        let analysis = SplitAnalysis::new(&cg.pairs);
        let n = g.n();
        let mut subsets: Vec<Vec<usize>> = vec![vec![]];
        subsets.extend((0..n).map(|v| vec![v]));
        for u in 0..n {
            for v in u + 1..n {
                subsets.push(vec![u, v]);
            }
        }
        for s in subsets {
            let seeds: Vec<Unit> = s.iter().map(|&v| cg.pairs.unit_of(v)).collect();
            let split = analysis.closure(&seeds);
            let predicted =
                refine::Coloring::from_labels(&gadgets::predicted_labels(&cg.pairs, &split));
            let ind = refine::individualize(&g, &s).unwrap();
            let stable = refine::stable_coloring(&ind).stable().clone();
            assert!(predicted.same_partition(&stable), "seeds {s:?}");
        }
    }

    #[test]
    fn random_circuits_compile_and_evaluate() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=8);
            let c = random_circuit(&mut rng, n, m);
            assert_eq!(c.num_inputs(), n);
            assert_eq!(c.gates().len(), m);
            eval_circuit(&c, &vec![true; n]);
            for variant in
                [CircuitVariant::Plain, CircuitVariant::Feedback, CircuitVariant::Replicated]
            {
                let cg = circuit_to_graph(&c, variant).unwrap();
                assert_eq!(cg.input_pairs.len(), n);
            }
        }
    }
}
