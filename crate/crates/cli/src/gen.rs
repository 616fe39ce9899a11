//! Generator subcommands. Each builds one instance, computes its
//! ground-truth label with the brute-force oracles, writes the instance
//! text, and optionally appends a manifest line recording the label.

use std::path::Path;

use fixbase_core::graph::ColoredGraph;
use fixbase_core::io::{self, ManifestEntry};
use fixbase_core::oracle;
use fixbase_core::reduce::{
    circuit_to_graph, domset_to_kdiscrete, group_to_rigid_graph, mini3sat_to_group,
    random_circuit, weighted_sat_brute, CircuitVariant, CnfFormula, DomsetVariant, PairGraph,
    SatGroupInstance,
};
use fixbase_core::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::common::{self, CmdOutput, Flags};

/// Variant names accepted by gen-circuit's --variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CircuitArg {
    Plain,
    Feedback,
    Replicated,
}

impl CircuitArg {
    fn variant(self) -> CircuitVariant {
        match self {
            CircuitArg::Plain => CircuitVariant::Plain,
            CircuitArg::Feedback => CircuitVariant::Feedback,
            CircuitArg::Replicated => CircuitVariant::Replicated,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CircuitArg::Plain => "plain",
            CircuitArg::Feedback => "feedback",
            CircuitArg::Replicated => "replicated",
        }
    }
}

/// Variant names accepted by gen-domset's --variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DomsetArg {
    Colored,
    Uncolored,
}

impl DomsetArg {
    fn variant(self) -> DomsetVariant {
        match self {
            DomsetArg::Colored => DomsetVariant::Colored,
            DomsetArg::Uncolored => DomsetVariant::Uncolored,
        }
    }

    fn name(self) -> &'static str {
        match self {
            DomsetArg::Colored => "colored",
            DomsetArg::Uncolored => "uncolored",
        }
    }
}

/// One generated instance, ready to emit.
struct Generated {
    id: String,
    parameters: Map<String, Value>,
    label: Value,
    oracle: &'static str,
    witness: Option<Value>,
    work: u64,
    text: String,
    summary: String,
}

/// Writes the instance text, appends the manifest line, and assembles the
/// report. Text-mode output stays parseable: the summary is a comment line
/// in front of the payload.
fn emit(
    problem: &str,
    gen: Generated,
    out: Option<&Path>,
    manifest: Option<&Path>,
    flags: &Flags,
) -> Result<CmdOutput> {
    if flags.json && out.is_none() {
        return Err(Error::InvalidInput(
            "--json generator runs need --out <path> for the instance text".into(),
        ));
    }
    if let Some(path) = out {
        common::write_file(path, &gen.text)?;
    }
    if let Some(path) = manifest {
        let entry = ManifestEntry {
            id: gen.id,
            parameters: gen.parameters.clone(),
            label: gen.label.clone(),
            oracle: gen.oracle.into(),
        };
        common::append_manifest(path, &entry)?;
    }
    let mut report = common::report(problem, gen.parameters, gen.label, gen.work);
    report.witness = gen.witness;
    let mut lines = vec![format!("# {}", gen.summary)];
    if out.is_none() {
        lines.push(gen.text.trim_end().to_string());
    }
    Ok(CmdOutput { report, lines, no: false })
}

/// Emits the standalone two-pair coupling gadget over three outer pairs.
pub fn cfi(out: Option<&Path>, manifest: Option<&Path>, flags: &Flags) -> Result<CmdOutput> {
    let mut pg = PairGraph::new();
    let a = pg.add_pair();
    let b = pg.add_pair();
    let c = pg.add_pair();
    pg.add_cfi(a, b, c)?;
    let g = pg.build_graph();
    let auts = oracle::brute_automorphisms(&g);
    let gen = Generated {
        id: "cfi".into(),
        parameters: common::params(json!({})),
        label: json!({"aut_order": auts.len()}),
        oracle: "brute-force automorphism scan",
        witness: None,
        work: auts.len() as u64,
        text: io::write_graph(&g),
        summary: format!(
            "coupling gadget: {} vertices, 3 outer pairs, |Aut| = {}",
            g.n(),
            auts.len()
        ),
    };
    emit("gen-cfi", gen, out, manifest, flags)
}

/// Samples a monotone circuit and compiles it to a pair-class graph whose
/// discreteness behavior tracks weight-k satisfiability.
#[allow(clippy::too_many_arguments)]
pub fn circuit(
    variant: CircuitArg,
    inputs: usize,
    gates: usize,
    k: usize,
    out: Option<&Path>,
    manifest: Option<&Path>,
    flags: &Flags,
) -> Result<CmdOutput> {
    if inputs == 0 || gates == 0 {
        return Err(Error::InvalidInput("--inputs and --gates must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let c = random_circuit(&mut rng, inputs, gates);
    let compiled = circuit_to_graph(&c, variant.variant())?;
    let g = compiled.graph();
    let sat = weighted_sat_brute(&c, k);
    let witness = sat.as_ref().map(|assignment| json!(compiled.witness_vertices(assignment)));
    let gen = Generated {
        id: format!("circuit-{}-n{inputs}-g{gates}-k{k}-s{}", variant.name(), flags.seed),
        parameters: common::params(json!({
            "variant": variant.name(),
            "inputs": inputs,
            "gates": gates,
            "k": k,
            "seed": flags.seed,
            "circuit": io::write_circuit(&c),
        })),
        label: json!({"k": k, "weight_k_satisfiable": sat.is_some()}),
        oracle: "exhaustive weight-k assignment scan",
        witness,
        work: fixbase_core::combin::binomial(inputs, k).unwrap_or(0).min(u64::MAX as u128) as u64,
        text: io::write_graph(&g),
        summary: format!(
            "{} circuit graph: {} vertices, weight-{k} satisfiable: {}",
            variant.name(),
            g.n(),
            common::yn(sat.is_some())
        ),
    };
    emit("gen-circuit", gen, out, manifest, flags)
}

/// Samples a small formula and lifts it through the set-cover reduction to
/// a coordinate-flip group.
fn random_formula(rng: &mut ChaCha8Rng, vars: usize, clauses: usize) -> Result<CnfFormula> {
    if vars == 0 {
        return Err(Error::InvalidInput("--vars must be at least 1".into()));
    }
    let mut raw = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let width = rng.gen_range(1..=3.min(vars));
        let mut pool: Vec<usize> = (0..vars).collect();
        let mut clause = Vec::with_capacity(width);
        for _ in 0..width {
            let i = rng.gen_range(0..pool.len());
            clause.push((pool.swap_remove(i), rng.gen_bool(0.5)));
        }
        raw.push(clause);
    }
    CnfFormula::normalized(vars, raw)
}

/// Exhaustive satisfiability scan over all assignments.
fn satisfiable_brute(f: &CnfFormula) -> Result<bool> {
    if f.num_vars() > 20 {
        return Err(Error::SearchSpace(format!(
            "{} variables is too many for the assignment scan",
            f.num_vars()
        )));
    }
    Ok((0u64..1 << f.num_vars()).any(|bits| {
        let assignment: Vec<bool> = (0..f.num_vars()).map(|v| bits >> v & 1 == 1).collect();
        f.satisfied_by(&assignment)
    }))
}

/// Shared construction and labeling for gen-sat-group and gen-rigid-graph.
fn sat_group_instance(
    vars: usize,
    clauses: usize,
    k: usize,
    n: usize,
    flags: &Flags,
) -> Result<(CnfFormula, SatGroupInstance, Value, Vec<usize>, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let f = random_formula(&mut rng, vars, clauses)?;
    let inst = mini3sat_to_group(&f, k, n)?;
    let satisfiable = satisfiable_brute(&f)?;
    common::guard_group_cap(&inst.group)?;
    let elements = oracle::closure_elements(inst.group.n(), inst.group.generators());
    let base = oracle::brute_min_base(inst.group.n(), &elements);
    let min_cover = oracle::brute_min_cover(inst.cover.universe, &inst.cover.sets);
    let label = json!({
        "satisfiable": satisfiable,
        "min_cover": min_cover,
        "min_base": base.len(),
    });
    Ok((f, inst, label, base, elements.len() as u64))
}

/// Emits the coordinate-flip group of a sampled formula.
pub fn sat_group(
    vars: usize,
    clauses: usize,
    k: usize,
    n: usize,
    out: Option<&Path>,
    manifest: Option<&Path>,
    flags: &Flags,
) -> Result<CmdOutput> {
    let (f, inst, label, base, work) = sat_group_instance(vars, clauses, k, n, flags)?;
    let gen = Generated {
        id: format!("satgroup-v{vars}-c{clauses}-k{k}-n{n}-s{}", flags.seed),
        parameters: common::params(json!({
            "vars": vars,
            "clauses": clauses,
            "k": k,
            "n": n,
            "seed": flags.seed,
            "cnf": io::write_cnf(f.num_vars(), f.clauses()),
        })),
        summary: format!(
            "set-cover group on {} points, universe {}, minimum base {}",
            inst.group.n(),
            inst.cover.universe,
            base.len()
        ),
        label,
        oracle: "assignment scan plus group closure scan",
        witness: Some(json!(base)),
        work,
        text: io::write_group(&inst.group),
    };
    emit("gen-sat-group", gen, out, manifest, flags)
}

/// Emits the rigid-graph realization of the sampled formula's group.
pub fn rigid_graph(
    vars: usize,
    clauses: usize,
    k: usize,
    n: usize,
    out: Option<&Path>,
    manifest: Option<&Path>,
    flags: &Flags,
) -> Result<CmdOutput> {
    let (f, inst, label, base, work) = sat_group_instance(vars, clauses, k, n, flags)?;
    let rigid = group_to_rigid_graph(&inst);
    let mut label = label;
    label["min_fixing_set"] = label["min_base"].clone();
    label["num_points"] = json!(rigid.num_points);
    let gen = Generated {
        id: format!("rigidgraph-v{vars}-c{clauses}-k{k}-n{n}-s{}", flags.seed),
        parameters: common::params(json!({
            "vars": vars,
            "clauses": clauses,
            "k": k,
            "n": n,
            "seed": flags.seed,
            "cnf": io::write_cnf(f.num_vars(), f.clauses()),
        })),
        label,
        oracle: "group closure scan; fixing sets of the graph are bases of the group",
        witness: Some(json!(base)),
        work,
        text: io::write_graph(&rigid.graph),
        summary: format!(
            "rigid-graph realization: {} vertices, {} cube points, universe {}",
            rigid.graph.n(),
            rigid.num_points,
            rigid.universe
        ),
    };
    emit("gen-rigid-graph", gen, out, manifest, flags)
}

/// Samples a graph and compiles a dominating-set question into a
/// bounded-round discreteness question.
#[allow(clippy::too_many_arguments)]
pub fn domset(
    variant: DomsetArg,
    l: usize,
    n: usize,
    edges: usize,
    k: usize,
    out: Option<&Path>,
    manifest: Option<&Path>,
    flags: &Flags,
) -> Result<CmdOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = edges.min(pairs.len());
    for i in 0..m {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    pairs.truncate(m);
    let x = ColoredGraph::uniform(n, pairs)?;
    let inst = domset_to_kdiscrete(&x, k, l, variant.variant())?;
    let dominating = oracle::brute_dominating_set(&x, k);
    let witness = dominating.as_ref().map(|d| json!(inst.witness_for(d)));
    let gen = Generated {
        id: format!("domset-{}-n{n}-m{m}-k{k}-l{l}-s{}", variant.name(), flags.seed),
        parameters: common::params(json!({
            "variant": variant.name(),
            "n": n,
            "edges": m,
            "k": k,
            "l": l,
            "seed": flags.seed,
            "input": io::write_graph(&x),
        })),
        label: json!({
            "dominating_set": dominating.is_some(),
            "k_out": inst.k_out,
            "l": l,
        }),
        oracle: "exhaustive dominating set scan",
        witness,
        work: fixbase_core::combin::binomial(n, k).unwrap_or(0).min(u64::MAX as u128) as u64,
        text: io::write_graph(&inst.graph),
        summary: format!(
            "{} domset reduction: {} vertices, budget {} from k={k}, dominated: {}",
            variant.name(),
            inst.graph.n(),
            inst.k_out,
            common::yn(dominating.is_some())
        ),
    };
    emit("gen-domset", gen, out, manifest, flags)
}
