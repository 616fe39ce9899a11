//! Line-based text formats for graphs, groups, circuits and formulas,
//! plus the JSON report and manifest shapes the command line emits.
//!
//! Graph, group and circuit files skip blank lines and `#` comments and
//! index vertices, points, gates and inputs from 0. Formula files follow
//! DIMACS conventions instead: `c` comment lines, one `p cnf <vars>
//! <clauses>` header, and 1-based signed literals closed by a `0`.
//! Every writer here round-trips through its parser structurally.

use serde::{Deserialize, Serialize};

use crate::graph::ColoredGraph;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::reduce::{GateOp, GateRef, MonotoneCircuit};
use crate::{Error, Result};

/// Machine-readable result of one command run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    /// Problem name, matching the subcommand.
    pub problem: String,
    /// Echo of the parameters the run used.
    pub parameters: serde_json::Map<String, serde_json::Value>,
    /// Decision or optimum value.
    pub answer: serde_json::Value,
    /// Replayable witness backing a yes answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Subsets examined or a comparable effort count.
    pub work: u64,
    /// Whether the brute-force cross-check agreed; present only when the
    /// oracle ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<bool>,
}

/// One generated instance in a corpus manifest.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Instance id, doubling as the emitted file's stem.
    pub id: String,
    /// Construction parameters.
    pub parameters: serde_json::Map<String, serde_json::Value>,
    /// Ground-truth label attached to the instance.
    pub label: serde_json::Value,
    /// How the label was obtained.
    pub oracle: String,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Tags a structural error with the line it surfaced on.
fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| parse_err(line, e.to_string())
}

fn number(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| parse_err(line, format!("expected a number, found {token:?}")))
}

/// Significant lines of a `#`-commented file, with 1-based numbers.
fn significant(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the `graph <n> <m>` format: color lines `c <vertex> <color>`
/// (color 0 when omitted) and edge lines `e <u> <v>`.
///
/// # Errors
/// Syntax problems, out-of-range endpoints, self-loops, repeated color
/// lines and an edge count differing from the header are reported with
/// their line number; duplicate edges and sparse colorings fail graph
/// validation afterwards.
pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    let mut lines = significant(text);
    let (header_line, header) =
        lines.next().ok_or_else(|| parse_err(1, "missing 'graph <n> <m>' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let &["graph", n, m] = tokens.as_slice() else {
        return Err(parse_err(header_line, "expected 'graph <n> <m>'"));
    };
    let n = number(n, header_line)?;
    let m = number(m, header_line)?;
    let mut colors = vec![0usize; n];
    let mut colored = vec![false; n];
    let mut edges = Vec::with_capacity(m);
    let mut last = header_line;
    for (line, l) in lines {
        last = line;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        match tokens.as_slice() {
            &["c", v, c] => {
                let v = number(v, line)?;
                if v >= n {
                    return Err(parse_err(line, format!("vertex {v} out of range (n = {n})")));
                }
                if colored[v] {
                    return Err(parse_err(line, format!("color of vertex {v} set twice")));
                }
                colored[v] = true;
                colors[v] = number(c, line)?;
            }
            &["e", u, v] => {
                let u = number(u, line)?;
                let v = number(v, line)?;
                if let Some(&w) = [u, v].iter().find(|&&w| w >= n) {
                    return Err(parse_err(line, format!("vertex {w} out of range (n = {n})")));
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            _ => return Err(parse_err(line, format!("expected a 'c' or 'e' line, found {l:?}"))),
        }
    }
    if edges.len() != m {
        return Err(parse_err(last, format!("header declares {m} edges, found {}", edges.len())));
    }
    ColoredGraph::new(n, edges, colors)
}

/// Writes a graph in the `parse_graph` format, emitting color lines only
/// for nonzero colors.
pub fn write_graph(g: &ColoredGraph) -> String {
    let mut out = format!("graph {} {}\n", g.n(), g.num_edges());
    for (v, &c) in g.colors().iter().enumerate() {
        if c != 0 {
            out.push_str(&format!("c {v} {c}\n"));
        }
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// Parses the `group <n>` format: one generator per line, either in
/// cycle notation `(0 1)(2 3)` (unmentioned points stay fixed) or as an
/// image table `img <i0> ... <i_{n-1}>`. No generator lines at all give
/// the trivial group.
///
/// # Errors
/// Reports syntax problems, out-of-range points and non-bijections with
/// their line number.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = significant(text);
    let (header_line, header) =
        lines.next().ok_or_else(|| parse_err(1, "missing 'group <n>' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let &["group", n] = tokens.as_slice() else {
        return Err(parse_err(header_line, "expected 'group <n>'"));
    };
    let n = number(n, header_line)?;
    let mut generators = Vec::new();
    for (line, l) in lines {
        let perm = if l.starts_with('(') {
            Permutation::from_cycles(n, &parse_cycles(l, line)?).map_err(at_line(line))?
        } else if l.split_whitespace().next() == Some("img") {
            let images = l
                .split_whitespace()
                .skip(1)
                .map(|t| number(t, line))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(parse_err(line, format!("expected {n} images, found {}", images.len())));
            }
            Permutation::from_images(images).map_err(at_line(line))?
        } else {
            return Err(parse_err(line, format!("expected a cycle or 'img' line, found {l:?}")));
        };
        generators.push(perm);
    }
    PermGroup::new(n, generators)
}

/// Splits `(0 1)(2 3)` into its cycles.
fn parse_cycles(l: &str, line: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = l;
    while !rest.is_empty() {
        let Some(tail) = rest.strip_prefix('(') else {
            return Err(parse_err(line, format!("expected '(' at {rest:?}")));
        };
        let Some(close) = tail.find(')') else {
            return Err(parse_err(line, "unclosed cycle"));
        };
        let cycle = tail[..close]
            .split_whitespace()
            .map(|t| number(t, line))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
        rest = tail[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Writes a group as a header plus one cycle-notation line per
/// generator; an identity generator appears as `()`.
pub fn write_group(g: &PermGroup) -> String {
    let mut out = format!("group {}\n", g.n());
    for gen in g.generators() {
        out.push_str(&cycle_notation(gen));
        out.push('\n');
    }
    out
}

/// Cycle notation with each cycle led by its least element, cycles
/// ordered by those leaders, and `()` for the identity.
pub fn cycle_notation(p: &Permutation) -> String {
    let mut seen = vec![false; p.degree()];
    let mut out = String::new();
    for start in 0..p.degree() {
        if seen[start] || p.apply(start) == start {
            continue;
        }
        out.push('(');
        let mut point = start;
        loop {
            seen[point] = true;
            if point != start {
                out.push(' ');
            }
            out.push_str(&point.to_string());
            point = p.apply(point);
            if point == start {
                break;
            }
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses a monotone circuit: an optional leading `inputs <n>` line,
/// gate lines `g<i> = AND|OR <ref> <ref>` with refs `x<j>` or an earlier
/// `g<j>`, and a final `out g<i>` line. Gate ids must run sequentially
/// from `g0`. Without the `inputs` line the input count is one past the
/// largest input referenced.
///
/// # Errors
/// Reports syntax problems, non-sequential gate ids, references to
/// undefined gates or undeclared inputs, and a missing or misplaced
/// `out` line, each with its line number.
pub fn parse_circuit(text: &str) -> Result<MonotoneCircuit> {
    let mut gates: Vec<(GateOp, GateRef, GateRef)> = Vec::new();
    let mut declared: Option<usize> = None;
    let mut num_inputs = 0usize;
    let mut output = None;
    let mut last = 1;
    for (line, l) in significant(text) {
        last = line;
        if output.is_some() {
            return Err(parse_err(line, "'out' must be the last line"));
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        match tokens.as_slice() {
            &["inputs", n] => {
                if declared.is_some() || !gates.is_empty() {
                    return Err(parse_err(line, "'inputs' must come before the gates"));
                }
                declared = Some(number(n, line)?);
            }
            &["out", gate] => {
                let id = gate_id(gate, line)?;
                if id >= gates.len() {
                    return Err(parse_err(line, format!("output gate g{id} is not defined")));
                }
                output = Some(id);
            }
            &[name, "=", op, a, b] => {
                let id = gate_id(name, line)?;
                if id != gates.len() {
                    return Err(parse_err(
                        line,
                        format!("gate ids must be sequential, expected g{}", gates.len()),
                    ));
                }
                let op = match op {
                    "AND" => GateOp::And,
                    "OR" => GateOp::Or,
                    _ => return Err(parse_err(line, format!("unknown gate op {op:?}"))),
                };
                let a = gate_ref(a, line, id, declared, &mut num_inputs)?;
                let b = gate_ref(b, line, id, declared, &mut num_inputs)?;
                gates.push((op, a, b));
            }
            _ => {
                return Err(parse_err(
                    line,
                    format!("expected 'g<i> = AND|OR <a> <b>' or 'out g<i>', found {l:?}"),
                ))
            }
        }
    }
    let output = output.ok_or_else(|| parse_err(last, "missing 'out' line"))?;
    MonotoneCircuit::new(declared.unwrap_or(num_inputs), gates, output)
}

fn gate_id(token: &str, line: usize) -> Result<usize> {
    let id = token
        .strip_prefix('g')
        .ok_or_else(|| parse_err(line, format!("expected g<i>, found {token:?}")))?;
    number(id, line)
}

fn gate_ref(
    token: &str,
    line: usize,
    next_gate: usize,
    declared: Option<usize>,
    num_inputs: &mut usize,
) -> Result<GateRef> {
    if let Some(j) = token.strip_prefix('x') {
        let j = number(j, line)?;
        if declared.is_some_and(|n| j >= n) {
            return Err(parse_err(line, format!("input x{j} is not declared")));
        }
        *num_inputs = (*num_inputs).max(j + 1);
        Ok(GateRef::Input(j))
    } else if token.starts_with('g') {
        let j = gate_id(token, line)?;
        if j >= next_gate {
            return Err(parse_err(line, format!("reference to g{j} before its definition")));
        }
        Ok(GateRef::Gate(j))
    } else {
        Err(parse_err(line, format!("expected x<j> or g<j>, found {token:?}")))
    }
}

/// Writes a circuit in the `parse_circuit` format, always with the
/// `inputs` line so unreferenced trailing inputs survive a round trip.
pub fn write_circuit(c: &MonotoneCircuit) -> String {
    let gate_ref = |r: &GateRef| match *r {
        GateRef::Input(j) => format!("x{j}"),
        GateRef::Gate(j) => format!("g{j}"),
    };
    let mut out = format!("inputs {}\n", c.num_inputs());
    for (i, (op, a, b)) in c.gates().iter().enumerate() {
        let op = match op {
            GateOp::And => "AND",
            GateOp::Or => "OR",
        };
        out.push_str(&format!("g{i} = {op} {} {}\n", gate_ref(a), gate_ref(b)));
    }
    out.push_str(&format!("out g{}\n", c.output()));
    out
}

/// Parses DIMACS CNF: `c` comments, one `p cnf <vars> <clauses>` header,
/// then one clause per line as signed 1-based literals closed by a `0`.
/// Returns the variable count and the clauses as (0-based variable,
/// is-positive) pairs, ready for `CnfFormula::new` or
/// `CnfFormula::normalized`.
///
/// # Errors
/// Reports syntax problems, literals out of the declared range, clauses
/// that are empty, unterminated or wider than 3 literals, and a clause
/// count differing from the header, each with its line number.
pub fn parse_cnf(text: &str) -> Result<(usize, Vec<Vec<(usize, bool)>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut last = 1;
    for (line, l) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        last = line;
        if l.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line, "second 'p' header"));
            }
            let tokens: Vec<&str> = l.split_whitespace().collect();
            let &["p", "cnf", vars, clause_count] = tokens.as_slice() else {
                return Err(parse_err(line, "expected 'p cnf <vars> <clauses>'"));
            };
            header = Some((number(vars, line)?, number(clause_count, line)?));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(parse_err(line, "clause before the 'p cnf' header"));
        };
        let literals = l
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| parse_err(line, format!("expected a literal, found {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let Some((&0, body)) = literals.split_last() else {
            return Err(parse_err(line, "clause must end with 0"));
        };
        let mut clause = Vec::with_capacity(body.len());
        for &lit in body {
            if lit == 0 {
                return Err(parse_err(line, "literal 0 inside a clause"));
            }
            let var = lit.unsigned_abs() as usize;
            if var > num_vars {
                return Err(parse_err(
                    line,
                    format!("variable {var} out of range (declared {num_vars})"),
                ));
            }
            clause.push((var - 1, lit > 0));
        }
        if clause.is_empty() {
            return Err(parse_err(line, "empty clause"));
        }
        if clause.len() > 3 {
            return Err(parse_err(
                line,
                format!("clause has {} literals, at most 3 allowed", clause.len()),
            ));
        }
        clauses.push(clause);
    }
    let (num_vars, m) = header.ok_or_else(|| parse_err(last, "missing 'p cnf' header"))?;
    if clauses.len() != m {
        return Err(parse_err(last, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    Ok((num_vars, clauses))
}

/// Writes clauses in the `parse_cnf` format.
pub fn write_cnf(num_vars: usize, clauses: &[Vec<(usize, bool)>]) -> String {
    let mut out = format!("p cnf {num_vars} {}\n", clauses.len());
    for clause in clauses {
        for &(var, positive) in clause {
            let sign = if positive { "" } else { "-" };
            out.push_str(&format!("{sign}{} ", var + 1));
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::CnfFormula;
    use proptest::prelude::*;

    fn parse_line(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn graph_format_parses_the_basics() {
        let k2 = parse_graph("graph 2 1\ne 0 1\n").unwrap();
        assert_eq!(k2, ColoredGraph::uniform(2, vec![(0, 1)]).unwrap());
        let commented = parse_graph("# a triangle with one marked vertex\n\ngraph 3 3\nc 0 1\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        assert_eq!(commented.colors(), &[1, 0, 0]);
        assert_eq!(commented.num_edges(), 3);
    }

    #[test]
    fn graph_format_rejects_bad_lines() {
        assert_eq!(parse_line(parse_graph("graph 2 1\ne 0 0\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_graph("").unwrap_err()), 1);
        assert_eq!(parse_line(parse_graph("graph 2 2\ne 0 1\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_graph("graph 2 1\n# fine\nv 0 1\n").unwrap_err()), 3);
        assert_eq!(parse_line(parse_graph("graph 2 1\ne 0 2\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_graph("graph 2 0\nc 0 1\nc 0 2\n").unwrap_err()), 3);
        assert!(matches!(
            parse_graph("graph 2 2\ne 0 1\ne 1 0\n").unwrap_err(),
            Error::InvalidEdge { .. }
        ));
    }

    #[test]
    fn group_format_parses_both_notations() {
        let g = parse_group("group 3\n(0 1)\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.order(), 2u32.into());
        let same = parse_group("group 3\nimg 1 0 2\n").unwrap();
        assert_eq!(same.generators(), g.generators());
        assert!(parse_group("group 3\n").unwrap().is_trivial());
        assert_eq!(parse_line(parse_group("group 3\nimg 1 1 2\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_group("group 3\n(0 3)\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_group("group 3\n(0 1\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_group("img 0 1").unwrap_err()), 1);
    }

    #[test]
    fn cycle_notation_orders_cycles_by_leader() {
        let p = Permutation::from_cycles(5, &[vec![3, 4], vec![0, 2, 1]]).unwrap();
        assert_eq!(cycle_notation(&p), "(0 2 1)(3 4)");
        assert_eq!(cycle_notation(&Permutation::identity(4)), "()");
        let round = parse_group("group 5\n(0 2 1)(3 4)\n()\n").unwrap();
        assert_eq!(round.generators(), &[p]);
    }

    #[test]
    fn circuit_format_parses_the_spec_shapes() {
        let and2 = parse_circuit("g0 = AND x0 x1\nout g0\n").unwrap();
        assert_eq!((and2.num_inputs(), and2.gates().len(), and2.output()), (2, 1, 0));
        let chained = parse_circuit("# two-level\ninputs 3\ng0 = OR x0 x1\ng1 = AND g0 x2\nout g1\n").unwrap();
        assert_eq!((chained.num_inputs(), chained.gates().len()), (3, 2));
    }

    #[test]
    fn circuit_format_rejects_bad_wiring() {
        assert_eq!(parse_line(parse_circuit("g0 = AND g1 x0\nout g0\n").unwrap_err()), 1);
        assert_eq!(parse_line(parse_circuit("g1 = AND x0 x1\nout g1\n").unwrap_err()), 1);
        assert_eq!(parse_line(parse_circuit("g0 = NAND x0 x1\nout g0\n").unwrap_err()), 1);
        assert_eq!(parse_line(parse_circuit("g0 = AND x0 x1\nout g1\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_circuit("g0 = AND x0 x1\n").unwrap_err()), 1);
        assert_eq!(parse_line(parse_circuit("out g0\ng0 = AND x0 x1\n").unwrap_err()), 1);
        assert_eq!(parse_line(parse_circuit("inputs 1\ng0 = AND x0 x1\nout g0\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_circuit("g0 = AND x0 x1\ninputs 2\nout g0\n").unwrap_err()), 2);
    }

    #[test]
    fn cnf_format_follows_dimacs_conventions() {
        let (vars, clauses) = parse_cnf("c a comment\np cnf 3 2\n1 -2 0\n2 3 0\n").unwrap();
        assert_eq!(vars, 3);
        assert_eq!(clauses, vec![vec![(0, true), (1, false)], vec![(1, true), (2, true)]]);
        CnfFormula::new(vars, clauses).unwrap();
        assert_eq!(parse_line(parse_cnf("p cnf 4 1\n1 2 3 4 0\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_cnf("p cnf 2 1\n1 3 0\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_cnf("p cnf 2 2\n1 0\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_cnf("p cnf 2 1\n1 2\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_cnf("p cnf 2 1\n0\n").unwrap_err()), 2);
        assert_eq!(parse_line(parse_cnf("1 0\np cnf 2 1\n").unwrap_err()), 1);
    }

    #[test]
    fn reports_serialize_with_the_promised_fields() {
        let mut parameters = serde_json::Map::new();
        parameters.insert("k".into(), 2.into());
        let report = Report {
            problem: "k-search".into(),
            parameters,
            answer: true.into(),
            witness: Some(vec![0, 3].into()),
            work: 7,
            oracle_agreement: None,
        };
        let value: serde_json::Value = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        let mut keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, vec!["answer", "parameters", "problem", "witness", "work"]);
        assert_eq!(value["parameters"]["k"], 2);
    }

    fn arb_graph() -> impl Strategy<Value = ColoredGraph> {
        (1usize..9).prop_flat_map(|n| {
            let bits = proptest::collection::vec(proptest::bool::ANY, n * (n - 1) / 2);
            let colors = proptest::collection::vec(0usize..3, n);
            (bits, colors).prop_map(move |(bits, colors)| {
                let mut edges = Vec::new();
                let mut idx = 0;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if bits[idx] {
                            edges.push((u, v));
                        }
                        idx += 1;
                    }
                }
                let dense = crate::graph::densify(&colors);
                ColoredGraph::new(n, edges, dense).unwrap()
            })
        })
    }

    fn arb_group() -> impl Strategy<Value = PermGroup> {
        (1usize..9).prop_flat_map(|n| {
            let perm = proptest::collection::vec(0usize..1000, n).prop_map(move |keys| {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&i| (keys[i], i));
                Permutation::from_images(order).unwrap()
            });
            (Just(n), proptest::collection::vec(perm, 0..3))
                .prop_map(|(n, gens)| PermGroup::new(n, gens).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn graph_round_trip_is_identity(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }

        #[test]
        fn group_round_trip_keeps_the_generators(g in arb_group()) {
            let back = parse_group(&write_group(&g)).unwrap();
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.generators(), g.generators());
        }

        #[test]
        fn circuit_round_trip_is_identity(seed in 0u64..500, inputs in 1usize..5, gates in 1usize..6) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let c = crate::reduce::random_circuit(&mut rng, inputs, gates);
            let text = write_circuit(&c);
            let back = parse_circuit(&text).unwrap();
            prop_assert_eq!((back.num_inputs(), back.gates(), back.output()),
                            (c.num_inputs(), c.gates(), c.output()));
        }

        #[test]
        fn cnf_round_trip_is_identity(vars in 1usize..6, picks in proptest::collection::vec((0usize..6, proptest::bool::ANY, 1usize..4), 0..4)) {
            let clauses: Vec<Vec<(usize, bool)>> = picks
                .iter()
                .map(|&(start, positive, width)| {
                    (0..width.min(vars)).map(|o| ((start + o) % vars, positive ^ (o % 2 == 0))).collect()
                })
                .collect();
            let text = write_cnf(vars, &clauses);
            prop_assert_eq!(parse_cnf(&text).unwrap(), (vars, clauses));
        }
    }
}
