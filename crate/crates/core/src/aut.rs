//! Automorphism groups of colored graphs via individualization and
//! refinement, support-bounded automorphism enumeration, and fixing-set
//! search (exact and parameterized by the complement size).
//!
//! The search descends a first path by repeatedly individualizing the
//! lowest vertex of the smallest non-singleton cell and refining to the
//! stable coloring. Sibling branches are pruned when their refinement
//! signature diverges from the first path's, and each surviving branch is
//! explored only until it yields the coset witness it was opened for: an
//! automorphism fixing the first-path prefix pointwise and mapping the
//! first-path vertex to the branch vertex. Witnesses per branch, together
//! with the stabilizer-chain structure of the first path, generate the
//! full group; every candidate is verified against edges and colors before
//! it is accepted.

use crate::base::{self, BaseResult, CobaseOutcome};
use crate::graph::ColoredGraph;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::refine::{stable_coloring, stable_with_signature, Coloring, RefinementSignature};
use crate::Result;
use num_bigint::BigUint;

/// Automorphism group order above which support-bounded enumeration
/// switches from full-element filtering to budgeted backtracking.
const FILTER_ORDER_CAP: u32 = 1_000_000;

/// The automorphism group of a colored graph.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub graph: ColoredGraph,
    pub group: PermGroup,
}

/// One internal node of the first search path.
struct FirstPathNode {
    coloring: Coloring,
    target: Vec<usize>,
    chosen: usize,
    child_sig: RefinementSignature,
}

/// Index of the smallest non-singleton cell, lowest index on ties.
fn target_cell(c: &Coloring) -> usize {
    c.cells()
        .iter()
        .enumerate()
        .filter(|(_, cell)| cell.len() > 1)
        .min_by_key(|(i, cell)| (cell.len(), *i))
        .expect("coloring is not discrete")
        .0
}

/// Generators of the automorphism group, by exhaustive backtracking over
/// individualization targets with refinement pruning.
pub fn automorphism_group(graph: &ColoredGraph) -> AutGroup {
    let n = graph.n();
    let root = stable_coloring(graph).stable().clone();

    let mut first_path: Vec<FirstPathNode> = Vec::new();
    let mut coloring = root;
    while !coloring.is_discrete() {
        let cell = target_cell(&coloring);
        let target = coloring.cell(cell).to_vec();
        let chosen = target[0];
        let (child, child_sig) = stable_with_signature(graph, coloring.split_off(chosen));
        first_path.push(FirstPathNode { coloring, target, chosen, child_sig });
        coloring = child;
    }
    let first_leaf: Vec<usize> = coloring.cells().iter().map(|cell| cell[0]).collect();

    let mut gens: Vec<Permutation> = Vec::new();
    let mut known = PermGroup::trivial(n);
    for depth in (0..first_path.len()).rev() {
        let prefix: Vec<usize> = first_path[..depth].iter().map(|node| node.chosen).collect();
        let chosen = first_path[depth].chosen;
        let siblings = first_path[depth].target[1..].to_vec();
        for u in siblings {
            if coset_already_witnessed(&gens, &prefix, chosen, u, n) {
                continue;
            }
            let (child, sig) =
                stable_with_signature(graph, first_path[depth].coloring.split_off(u));
            if sig != first_path[depth].child_sig {
                continue;
            }
            explore(
                graph,
                &first_path,
                &first_leaf,
                depth + 1,
                child,
                &prefix,
                chosen,
                u,
                &mut gens,
                &mut known,
            );
        }
    }
    AutGroup { graph: graph.clone(), group: known }
}

/// Whether `u` already lies in the orbit of `chosen` under the found
/// generators that individually fix every prefix point (a sound
/// under-approximation of the prefix stabilizer).
fn coset_already_witnessed(
    gens: &[Permutation],
    prefix: &[usize],
    chosen: usize,
    u: usize,
    n: usize,
) -> bool {
    let fixing: Vec<&Permutation> =
        gens.iter().filter(|g| prefix.iter().all(|&p| g.apply(p) == p)).collect();
    if fixing.is_empty() {
        return false;
    }
    let mut seen = vec![false; n];
    seen[chosen] = true;
    let mut queue = vec![chosen];
    while let Some(x) = queue.pop() {
        for g in &fixing {
            let y = g.apply(x);
            if y == u {
                return true;
            }
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    false
}

/// Depth-first search below one sibling branch. Returns true as soon as a
/// verified automorphism fixes `prefix` pointwise and maps `chosen` to
/// `branch`; other verified automorphisms met along the way are kept as
/// generators but do not stop the branch.
#[allow(clippy::too_many_arguments)]
fn explore(
    graph: &ColoredGraph,
    first_path: &[FirstPathNode],
    first_leaf: &[usize],
    depth: usize,
    coloring: Coloring,
    prefix: &[usize],
    chosen: usize,
    branch: usize,
    gens: &mut Vec<Permutation>,
    known: &mut PermGroup,
) -> bool {
    if coloring.is_discrete() {
        let mut images = vec![0; graph.n()];
        for (i, cell) in coloring.cells().iter().enumerate() {
            images[first_leaf[i]] = cell[0];
        }
        let sigma = Permutation::from_images(images).expect("leaf cells biject");
        if sigma.is_identity() || !graph.is_automorphism(&sigma) {
            return false;
        }
        if !known.contains(&sigma).expect("degrees match") {
            gens.push(sigma.clone());
            *known = PermGroup::new(graph.n(), gens.clone()).expect("degrees match");
        }
        return prefix.iter().all(|&p| sigma.apply(p) == p) && sigma.apply(chosen) == branch;
    }
    debug_assert!(depth < first_path.len(), "signature-matched nodes share the leaf depth");
    let cell = target_cell(&coloring);
    for w in coloring.cell(cell).to_vec() {
        let (child, sig) = stable_with_signature(graph, coloring.split_off(w));
        if sig != first_path[depth].child_sig {
            continue;
        }
        if explore(graph, first_path, first_leaf, depth + 1, child, prefix, chosen, branch, gens, known)
        {
            return true;
        }
    }
    false
}

/// All nontrivial automorphisms with support at most `k`, in image order.
/// Small groups are filtered element by element; larger ones are
/// enumerated by backtracking that abandons branches once more than `k`
/// vertices have moved.
pub fn support_bounded_automorphisms(graph: &ColoredGraph, k: usize) -> Vec<Permutation> {
    if k < 2 {
        return Vec::new();
    }
    let aut = automorphism_group(graph);
    let mut found = if aut.group.order() <= BigUint::from(FILTER_ORDER_CAP) {
        enumerate_elements(graph.n(), aut.group.generators())
            .into_iter()
            .filter(|g| {
                let s = g.support().len();
                s > 0 && s <= k
            })
            .collect()
    } else {
        bounded_backtrack(graph, k)
    };
    found.sort_by(|a, b| a.images().cmp(b.images()));
    found
}

/// Breadth-first closure of the generated group; callers bound the order
/// beforehand.
fn enumerate_elements(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(n);
    let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for h in gens {
            let next = Permutation::compose(&out[i], h);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

/// Direct enumeration of automorphisms moving at most `k` vertices, by
/// assigning images in vertex order under color, adjacency, and move
/// budget constraints.
fn bounded_backtrack(graph: &ColoredGraph, k: usize) -> Vec<Permutation> {
    let n = graph.n();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    assign(graph, k, 0, 0, &mut images, &mut used, &mut out);
    out
}

fn assign(
    graph: &ColoredGraph,
    k: usize,
    v: usize,
    moved: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    let n = graph.n();
    if v == n {
        if moved > 0 {
            out.push(Permutation::from_images(images.clone()).expect("assignment bijects"));
        }
        return;
    }
    let consistent = |w: usize, images: &[usize]| {
        graph.color(w) == graph.color(v)
            && (0..v).all(|u| graph.has_edge(v, u) == graph.has_edge(w, images[u]))
    };
    if moved == k {
        // Budget exhausted: the remaining vertices must stay put.
        if !used[v] && consistent(v, images) {
            images[v] = v;
            used[v] = true;
            assign(graph, k, v + 1, moved, images, used, out);
            used[v] = false;
            images[v] = usize::MAX;
        }
        return;
    }
    for w in 0..n {
        if used[w] || !consistent(w, images) {
            continue;
        }
        images[v] = w;
        used[w] = true;
        assign(graph, k, v + 1, moved + usize::from(w != v), images, used, out);
        used[w] = false;
        images[v] = usize::MAX;
    }
}

/// Whether no nontrivial automorphism fixes every vertex of `s`.
///
/// # Errors
/// Returns an error if a vertex of `s` is out of range.
pub fn is_fixing_set(graph: &ColoredGraph, s: &[usize]) -> Result<bool> {
    base::is_base(&automorphism_group(graph).group, s)
}

/// A minimum fixing set with evidence; its size is the fixing number.
pub fn min_fixing_set(graph: &ColoredGraph) -> BaseResult {
    base::min_base_exact(&automorphism_group(graph).group)
}

/// Searches for exactly `k` vertices whose complement is a fixing set, by
/// running the co-base search on the subgroup generated by all
/// automorphisms of support at most `k`. An (n-k)-set is a base for the
/// full automorphism group exactly when it intersects the support of every
/// such automorphism, which is the base condition for this subgroup.
///
/// # Errors
/// Propagates group-operation errors; none occur for well-formed graphs.
pub fn cofix_fpt(graph: &ColoredGraph, k: usize) -> Result<CobaseOutcome> {
    let bounded = support_bounded_automorphisms(graph, k);
    let restricted = PermGroup::new(graph.n(), bounded)?;
    base::cobase_fpt(&restricted, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn path3() -> ColoredGraph {
        ColoredGraph::uniform(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    fn triangle(colors: Vec<usize>) -> ColoredGraph {
        ColoredGraph::new(3, vec![(0, 1), (0, 2), (1, 2)], colors).unwrap()
    }

    fn rigid3() -> ColoredGraph {
        ColoredGraph::new(3, vec![(0, 1), (1, 2)], vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphism_group(&path3()).group.order(), BigUint::from(2u8));
        assert_eq!(automorphism_group(&triangle(vec![0, 0, 0])).group.order(), BigUint::from(6u8));
        assert_eq!(automorphism_group(&triangle(vec![1, 0, 0])).group.order(), BigUint::from(2u8));
        assert!(automorphism_group(&rigid3()).group.is_trivial());
    }

    #[test]
    fn support_bounded_enumeration() {
        assert!(support_bounded_automorphisms(&rigid3(), 3).is_empty());
        assert!(support_bounded_automorphisms(&path3(), 1).is_empty());
        let swaps = support_bounded_automorphisms(&path3(), 2);
        assert_eq!(swaps, vec![Permutation::from_cycles(3, &[vec![0, 2]]).unwrap()]);
    }

    #[test]
    fn fixing_set_checks() {
        assert!(is_fixing_set(&rigid3(), &[]).unwrap());
        assert!(!is_fixing_set(&path3(), &[1]).unwrap());
        assert!(is_fixing_set(&path3(), &[0]).unwrap());
    }

    #[test]
    fn fixing_numbers() {
        assert_eq!(min_fixing_set(&rigid3()).b, 0);
        let c4 = ColoredGraph::uniform(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(min_fixing_set(&c4).b, 2);
        assert_eq!(min_fixing_set(&path3()).b, 1);
    }

    #[test]
    fn cofix_examples() {
        assert_eq!(cofix_fpt(&rigid3(), 2).unwrap().cobase, Some(vec![0, 1]));
        let k2 = ColoredGraph::uniform(2, vec![(0, 1)]).unwrap();
        assert_eq!(cofix_fpt(&k2, 2).unwrap().cobase, None);
        let pairs = ColoredGraph::new(
            8,
            vec![(0, 1), (2, 3), (4, 5), (6, 7)],
            vec![0, 0, 1, 1, 2, 2, 3, 3],
        )
        .unwrap();
        assert_eq!(cofix_fpt(&pairs, 3).unwrap().cobase, Some(vec![0, 2, 4]));
    }

    fn arb_graph() -> impl Strategy<Value = ColoredGraph> {
        (1usize..7).prop_flat_map(|n| {
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

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn group_order_matches_brute_force(g in arb_graph()) {
            let brute = oracle::brute_automorphisms(&g);
            let aut = automorphism_group(&g);
            prop_assert_eq!(aut.group.order(), BigUint::from(brute.len()));
            for gen in aut.group.generators() {
                prop_assert!(g.is_automorphism(gen));
            }
        }

        #[test]
        fn support_bounded_matches_brute_filter(g in arb_graph(), k in 0usize..4) {
            let brute: Vec<Permutation> = oracle::brute_automorphisms(&g)
                .into_iter()
                .filter(|p| {
                    let s = p.support().len();
                    s > 0 && s <= k
                })
                .collect();
            let fast = support_bounded_automorphisms(&g, k);
            prop_assert_eq!(fast, brute);
        }

        #[test]
        fn backtracking_matches_filtering(g in arb_graph(), k in 2usize..5) {
            let mut via_backtrack = bounded_backtrack(&g, k);
            via_backtrack.sort_by(|a, b| a.images().cmp(b.images()));
            let via_filter: Vec<Permutation> = support_bounded_automorphisms(&g, k);
            prop_assert_eq!(via_backtrack, via_filter);
        }
    }
}
