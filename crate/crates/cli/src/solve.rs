//! Solver subcommands. Each loads one instance file, runs the matching
//! library routine, and, on request, cross-checks the answer against a
//! brute-force oracle or replays the reported witness.

use std::path::Path;

use fixbase_core::aut::{automorphism_group, cofix_fpt, is_fixing_set, min_fixing_set};
use fixbase_core::base::{cobase_fpt, greedy_base, is_base, min_base_exact};
use fixbase_core::bounded3::solve_3bounded;
use fixbase_core::classes::{k_class_search, k_color_valence, membership, ClassTag};
use fixbase_core::combin::Subsets;
use fixbase_core::graph::ColoredGraph;
use fixbase_core::io::cycle_notation;
use fixbase_core::kernel::{kernelize_nk_discrete, nk_discrete_solve};
use fixbase_core::oracle;
use fixbase_core::refine::{color_valence, individualize, is_discrete, stable_coloring};
use fixbase_core::{Error, Result};
use num_bigint::BigUint;
use serde_json::json;

use crate::common::{self, ClassArg, CmdOutput, Flags};

/// Rejects the class tags that have no brute-force membership oracle.
fn guard_brute_class(g: &ColoredGraph, tag: ClassTag) -> Result<()> {
    match tag {
        ClassTag::Amenable | ClassTag::Compact => Err(Error::InvalidInput(
            "no brute-force oracle for the amenable and compact classes".into(),
        )),
        ClassTag::Refinable | ClassTag::Rigid => common::guard_aut_cap(g),
        _ => Ok(()),
    }
}

/// The points of `0..n` outside the sorted-or-not `chosen` list.
fn complement(n: usize, chosen: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !chosen.contains(v)).collect()
}

/// Runs refinement to the stable coloring and reports its shape.
pub fn refine(file: &Path, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let trace = stable_coloring(&g);
    let stable = trace.stable();
    let mut report = common::report(
        "refine",
        common::params(json!({})),
        json!({
            "cells": stable.num_cells(),
            "rounds": trace.stabilized_at,
            "discrete": stable.is_discrete(),
        }),
        trace.stabilized_at as u64,
    );
    report.witness = Some(json!(stable.labels()));
    if flags.oracle {
        let naive = oracle::naive_stable(&g, g.colors());
        common::record_check(&mut report, oracle::same_partition(&naive, stable.labels()));
    }
    let cells: Vec<String> = stable.cells().iter().map(|c| common::seq(c)).collect();
    let lines = vec![
        format!(
            "stable coloring: cells {}, rounds {}, discrete: {}",
            stable.num_cells(),
            trace.stabilized_at,
            common::yn(stable.is_discrete())
        ),
        format!("cells: {}", cells.join(" | ")),
    ];
    Ok(CmdOutput { report, lines, no: false })
}

/// Decides membership of the graph in one class.
pub fn classify(file: &Path, class: ClassArg, l: Option<usize>, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let tag = class.tag(l)?;
    let answer = membership(&g, tag)?;
    let mut parameters = common::params(json!({"class": class.name()}));
    if let Some(l) = l {
        parameters.insert("l".into(), json!(l));
    }
    let mut report = common::report("classify", parameters, json!(answer), 1);
    if flags.oracle {
        guard_brute_class(&g, tag)?;
        let brute = match tag {
            ClassTag::Discrete => {
                oracle::labels_discrete(&oracle::naive_stable(&g, g.colors()))
            }
            ClassTag::DiscreteWithin(rounds) => {
                oracle::labels_discrete(&oracle::naive_refine(&g, g.colors(), rounds))
            }
            ClassTag::Refinable => {
                let auts = oracle::brute_automorphisms(&g);
                let mut orbit_labels = vec![0usize; g.n()];
                for (i, orbit) in oracle::brute_orbits(g.n(), &auts).iter().enumerate() {
                    for &v in orbit {
                        orbit_labels[v] = i;
                    }
                }
                oracle::same_partition(&oracle::naive_stable(&g, g.colors()), &orbit_labels)
            }
            ClassTag::Rigid => oracle::brute_automorphisms(&g).len() == 1,
            ClassTag::Amenable | ClassTag::Compact => unreachable!("guarded above"),
        };
        common::record_check(&mut report, brute == answer);
    }
    let lines = vec![format!("{}: {}", class.name(), common::yn(answer))];
    Ok(CmdOutput { report, lines, no: !answer })
}

/// Finds an exact minimum base of the group.
pub fn min_base(file: &Path, flags: &Flags) -> Result<CmdOutput> {
    let group = common::load_group(file)?;
    let result = min_base_exact(&group);
    let mut report = common::report(
        "min-base",
        common::params(json!({})),
        json!(result.b),
        result.certificate.len() as u64,
    );
    report.witness = Some(json!(result.base));
    if flags.oracle {
        common::guard_group_cap(&group)?;
        let elements = oracle::closure_elements(group.n(), group.generators());
        let brute = oracle::brute_min_base(group.n(), &elements);
        common::record_check(&mut report, brute.len() == result.b);
    }
    if flags.verify {
        common::record_check(&mut report, is_base(&group, &result.base)?);
    }
    let lines = vec![format!("minimum base size {}: {}", result.b, common::seq(&result.base))];
    Ok(CmdOutput { report, lines, no: false })
}

/// Builds a greedy base of the group.
pub fn greedy(file: &Path, flags: &Flags) -> Result<CmdOutput> {
    let group = common::load_group(file)?;
    let base = greedy_base(&group);
    let mut report = common::report(
        "greedy-base",
        common::params(json!({})),
        json!(base.len()),
        base.len() as u64,
    );
    report.witness = Some(json!(base));
    if flags.oracle {
        common::guard_group_cap(&group)?;
        let elements = oracle::closure_elements(group.n(), group.generators());
        common::record_check(&mut report, oracle::is_base_elements(&elements, &base));
    }
    if flags.verify {
        common::record_check(&mut report, is_base(&group, &base)?);
    }
    let lines = vec![format!("greedy base size {}: {}", base.len(), common::seq(&base))];
    Ok(CmdOutput { report, lines, no: false })
}

/// Decides whether `k` points can be left out of a base of the group.
pub fn cobase(file: &Path, k: usize, flags: &Flags) -> Result<CmdOutput> {
    let group = common::load_group(file)?;
    let outcome = cobase_fpt(&group, k)?;
    let answer = outcome.cobase.is_some();
    let mut report = common::report(
        "cobase",
        common::params(json!({"k": k})),
        json!(answer),
        (outcome.kernel_restarts + outcome.stabilizer_restarts) as u64,
    );
    report.witness = outcome.cobase.as_ref().map(|c| json!(c));
    if flags.oracle {
        common::guard_group_cap(&group)?;
        let elements = oracle::closure_elements(group.n(), group.generators());
        let brute = oracle::brute_cobase(group.n(), &elements, k);
        common::record_check(&mut report, brute.is_some() == answer);
    }
    if flags.verify {
        if let Some(cobase) = &outcome.cobase {
            let rest = complement(group.n(), cobase);
            common::record_check(&mut report, is_base(&group, &rest)?);
        }
    }
    let lines = vec![match &outcome.cobase {
        Some(cobase) => format!("co-base of size {k}: {}", common::seq(cobase)),
        None => format!("no co-base of size {k}"),
    }];
    Ok(CmdOutput { report, lines, no: !answer })
}

/// Finds an exact minimum fixing set of the graph.
pub fn min_fixing(file: &Path, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let result = min_fixing_set(&g);
    let mut report = common::report(
        "min-fixing-set",
        common::params(json!({})),
        json!(result.b),
        result.certificate.len() as u64,
    );
    report.witness = Some(json!(result.base));
    if flags.oracle {
        common::guard_aut_cap(&g)?;
        let brute = oracle::brute_min_fixing_set(&g);
        common::record_check(&mut report, brute.len() == result.b);
    }
    if flags.verify {
        common::record_check(&mut report, is_fixing_set(&g, &result.base)?);
    }
    let lines =
        vec![format!("minimum fixing set size {}: {}", result.b, common::seq(&result.base))];
    Ok(CmdOutput { report, lines, no: false })
}

/// Decides whether `k` vertices can be left out of a fixing set.
pub fn cofix(file: &Path, k: usize, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let outcome = cofix_fpt(&g, k)?;
    let answer = outcome.cobase.is_some();
    let mut report = common::report(
        "cofix",
        common::params(json!({"k": k})),
        json!(answer),
        (outcome.kernel_restarts + outcome.stabilizer_restarts) as u64,
    );
    report.witness = outcome.cobase.as_ref().map(|c| json!(c));
    if flags.oracle {
        common::guard_aut_cap(&g)?;
        let min = oracle::brute_min_fixing_set(&g).len();
        let brute = k <= g.n() && g.n() - k >= min;
        common::record_check(&mut report, brute == answer);
    }
    if flags.verify {
        if let Some(left_out) = &outcome.cobase {
            let rest = complement(g.n(), left_out);
            common::record_check(&mut report, is_fixing_set(&g, &rest)?);
        }
    }
    let lines = vec![match &outcome.cobase {
        Some(left_out) => format!("co-fixing set of size {k}: {}", common::seq(left_out)),
        None => format!("no co-fixing set of size {k}"),
    }];
    Ok(CmdOutput { report, lines, no: !answer })
}

/// Searches for `k` vertices whose individualization puts the graph into
/// the class.
pub fn k_search(
    file: &Path,
    class: ClassArg,
    k: usize,
    l: Option<usize>,
    flags: &Flags,
) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let tag = class.tag(l)?;
    let result = k_class_search(&g, k, tag)?;
    let mut parameters = common::params(json!({"class": class.name(), "k": k}));
    if let Some(l) = l {
        parameters.insert("l".into(), json!(l));
    }
    let mut report = common::report("k-search", parameters, json!(result.answer), result.work);
    report.witness = result.witness.as_ref().map(|w| json!(w));
    if flags.oracle {
        guard_brute_class(&g, tag)?;
        let brute = oracle::brute_k_class(&g, k, tag)?;
        common::record_check(&mut report, brute.is_some() == result.answer);
    }
    if flags.verify {
        if let Some(witness) = &result.witness {
            let ind = individualize(&g, witness)?;
            common::record_check(&mut report, membership(&ind, tag)?);
        }
    }
    let lines = vec![match &result.witness {
        Some(w) => format!("{} after individualizing {k}: yes ({})", class.name(), common::seq(w)),
        None => format!("{} after individualizing {k}: no", class.name()),
    }];
    Ok(CmdOutput { report, lines, no: !result.answer })
}

/// Searches for `k` vertices whose individualization brings the stable
/// color valence down to `d`.
pub fn valence(file: &Path, k: usize, d: usize, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let result = k_color_valence(&g, k, d);
    let mut report = common::report(
        "color-valence",
        common::params(json!({"k": k, "d": d})),
        json!(result.answer),
        result.work,
    );
    report.witness = result.witness.as_ref().map(|w| json!(w));
    if flags.oracle {
        let brute = oracle::brute_color_valence_search(&g, k, d);
        common::record_check(&mut report, brute.is_some() == result.answer);
    }
    if flags.verify {
        if let Some(witness) = &result.witness {
            let ind = individualize(&g, witness)?;
            let refined = stable_coloring(&ind).stable().recolor(&ind);
            common::record_check(&mut report, color_valence(&refined) <= d);
        }
    }
    let lines = vec![match &result.witness {
        Some(w) => format!("valence at most {d} after individualizing {k}: yes ({})", common::seq(w)),
        None => format!("valence at most {d} after individualizing {k}: no"),
    }];
    Ok(CmdOutput { report, lines, no: !result.answer })
}

/// Decides whether individualizing all but `k` vertices reaches a discrete
/// stable coloring.
pub fn nk_discrete(file: &Path, k: usize, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let result = nk_discrete_solve(&g, k);
    let mut report = common::report(
        "nk-discrete",
        common::params(json!({"k": k})),
        json!(result.answer),
        result.work,
    );
    report.witness = result.witness.as_ref().map(|w| json!(w));
    if flags.oracle {
        let brute = oracle::brute_hidden_discrete(&g, k);
        common::record_check(&mut report, brute.is_some() == result.answer);
    }
    if flags.verify {
        if let Some(hidden) = &result.witness {
            let shown = complement(g.n(), hidden);
            let ind = individualize(&g, &shown)?;
            common::record_check(&mut report, is_discrete(&ind));
        }
    }
    let lines = vec![match &result.witness {
        Some(hidden) => format!("discrete hiding {k}: yes (hidden: {})", common::seq(hidden)),
        None => format!("discrete hiding {k}: no"),
    }];
    Ok(CmdOutput { report, lines, no: !result.answer })
}

/// Shrinks a hidden-discreteness instance to its twin-class kernel.
pub fn kernelize(file: &Path, k: usize, out: Option<&Path>, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let kernel = kernelize_nk_discrete(&g, k);
    let text = fixbase_core::io::write_graph(&kernel.graph);
    let mut report = common::report(
        "kernelize",
        common::params(json!({"k": k})),
        json!({
            "kernel_vertices": kernel.graph.n(),
            "kernel_k": kernel.k,
            "bounded": kernel.bounded,
            "removed": kernel.removed.len(),
            "graph": text,
        }),
        kernel.work,
    );
    report.witness = kernel.witness.as_ref().map(|w| json!(w));
    if flags.oracle {
        let before = oracle::brute_hidden_discrete(&g, k).is_some();
        let after = oracle::brute_hidden_discrete(&kernel.graph, kernel.k).is_some();
        common::record_check(&mut report, before == after);
    }
    if flags.verify {
        if let Some(hidden) = &kernel.witness {
            let shown = complement(g.n(), hidden);
            let ind = individualize(&g, &shown)?;
            common::record_check(&mut report, is_discrete(&ind));
        }
    }
    if let Some(path) = out {
        common::write_file(path, &text)?;
    }
    let mut lines = vec![format!(
        "# kernel: {} vertices, budget {}, bounded: {}, removed twins: {}",
        kernel.graph.n(),
        kernel.k,
        common::yn(kernel.bounded),
        kernel.removed.len()
    )];
    if out.is_none() {
        lines.push(text.trim_end().to_string());
    }
    Ok(CmdOutput { report, lines, no: false })
}

/// Finds the minimum individualization set for a class on a 3-bounded
/// graph, summing per-component minima.
pub fn bounded(file: &Path, class: ClassArg, l: Option<usize>, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let tag = class.tag(l)?;
    let result = solve_3bounded(&g, tag)?;
    let witness = result.witness.clone().unwrap_or_default();
    let mut parameters = common::params(json!({"class": class.name()}));
    if let Some(l) = l {
        parameters.insert("l".into(), json!(l));
    }
    let mut report =
        common::report("solve-3bounded", parameters, json!(witness.len()), result.work);
    report.witness = Some(json!(witness));
    if flags.oracle {
        let minimum = match tag {
            ClassTag::Amenable | ClassTag::Compact => {
                let mut found = None;
                'sizes: for size in 0..=witness.len() {
                    for subset in Subsets::new(g.n(), size) {
                        let ind = individualize(&g, &subset)?;
                        if membership(&ind, tag)? {
                            found = Some(size);
                            break 'sizes;
                        }
                    }
                }
                found
            }
            _ => {
                guard_brute_class(&g, tag)?;
                let mut found = None;
                for size in 0..=witness.len() {
                    if oracle::brute_k_class(&g, size, tag)?.is_some() {
                        found = Some(size);
                        break;
                    }
                }
                found
            }
        };
        common::record_check(&mut report, minimum == Some(witness.len()));
    }
    if flags.verify {
        let ind = individualize(&g, &witness)?;
        common::record_check(&mut report, membership(&ind, tag)?);
    }
    let lines = vec![format!(
        "minimum individualization set for {}: {} ({})",
        class.name(),
        witness.len(),
        common::seq(&witness)
    )];
    Ok(CmdOutput { report, lines, no: false })
}

/// Computes the automorphism group of the graph.
pub fn autgroup(file: &Path, flags: &Flags) -> Result<CmdOutput> {
    let g = common::load_graph(file)?;
    let aut = automorphism_group(&g);
    let order = aut.group.order();
    let gens: Vec<String> = aut.group.generators().iter().map(cycle_notation).collect();
    let mut report = common::report(
        "autgroup",
        common::params(json!({})),
        json!({"order": order.to_string(), "generators": gens}),
        aut.group.generators().len() as u64,
    );
    if flags.oracle {
        common::guard_aut_cap(&g)?;
        let brute = oracle::brute_automorphisms(&g);
        common::record_check(&mut report, BigUint::from(brute.len()) == order);
    }
    if flags.verify {
        let ok = aut.group.generators().iter().all(|p| g.is_automorphism(p));
        common::record_check(&mut report, ok);
    }
    let mut lines = vec![format!("automorphism group order {order}, {} generators", gens.len())];
    lines.extend(gens);
    Ok(CmdOutput { report, lines, no: false })
}
