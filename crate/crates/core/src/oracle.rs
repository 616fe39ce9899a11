//! Brute-force reference implementations.
//!
//! Everything here trades speed for obviousness and is used to cross-check
//! the fast paths, both in tests and behind the CLI's `--oracle` flag. The
//! routines avoid the production data structures where practical: group
//! questions are answered from explicit element lists, refinement questions
//! from a naive relabel-to-fixpoint loop, and search questions by scanning
//! subsets in lexicographic order.

use crate::classes::ClassTag;
use crate::combin::Subsets;
use crate::graph::{densify, ColoredGraph};
use crate::perm::Permutation;
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashSet;

/// Hard cap on closure sizes; oracles refuse rather than thrash.
pub const CLOSURE_CAP: usize = 1 << 22;

/// Every element of the group generated by `gens`, via breadth-first
/// closure under right multiplication. Includes the identity.
///
/// # Panics
/// Panics if the group has more than [`CLOSURE_CAP`] elements or any
/// generator degree differs from `n`.
pub fn closure_elements(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    for g in gens {
        assert_eq!(g.degree(), n, "generator degree mismatch");
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let mut out: Vec<Permutation> = seen.iter().cloned().collect();
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = Permutation::compose(&g, h);
            if seen.insert(gh.clone()) {
                assert!(seen.len() <= CLOSURE_CAP, "group closure exceeds oracle cap");
                out.push(gh.clone());
                frontier.push(gh);
            }
        }
    }
    out
}

/// Group order by explicit closure.
pub fn brute_order(n: usize, gens: &[Permutation]) -> BigUint {
    BigUint::from(closure_elements(n, gens).len())
}

/// Membership by explicit closure.
pub fn brute_contains(n: usize, gens: &[Permutation], g: &Permutation) -> bool {
    closure_elements(n, gens).contains(g)
}

/// Elements fixing every point of `points`, filtered from an element list.
pub fn pointwise_stabilizer_elements(
    elements: &[Permutation],
    points: &[usize],
) -> Vec<Permutation> {
    elements
        .iter()
        .filter(|g| points.iter().all(|&p| g.apply(p) == p))
        .cloned()
        .collect()
}

/// Whether `base` is a base: only the identity fixes all of it.
pub fn is_base_elements(elements: &[Permutation], base: &[usize]) -> bool {
    pointwise_stabilizer_elements(elements, base).iter().all(|g| g.is_identity())
}

/// Lexicographically least minimum base, by scanning subset sizes.
pub fn brute_min_base(n: usize, elements: &[Permutation]) -> Vec<usize> {
    for size in 0..=n {
        for subset in Subsets::new(n, size) {
            if is_base_elements(elements, &subset) {
                return subset;
            }
        }
    }
    unreachable!("the full domain is always a base");
}

/// Lexicographically least set of exactly `k` points whose complement is a
/// base, by exhaustive subset scan.
pub fn brute_cobase(n: usize, elements: &[Permutation], k: usize) -> Option<Vec<usize>> {
    for subset in Subsets::new(n, k) {
        let complement: Vec<usize> = (0..n).filter(|p| !subset.contains(p)).collect();
        if is_base_elements(elements, &complement) {
            return Some(subset);
        }
    }
    None
}

/// Orbits of the generated group, ordered by smallest point.
pub fn brute_orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// All color-preserving automorphisms, by filtering every color-respecting
/// bijection. Candidate count is the product of color-class factorials.
///
/// # Panics
/// Panics if that candidate count exceeds [`CLOSURE_CAP`].
pub fn brute_automorphisms(g: &ColoredGraph) -> Vec<Permutation> {
    let classes = g.color_classes();
    let mut candidates: u128 = 1;
    for class in &classes {
        for i in 1..=class.len() as u128 {
            candidates = candidates.saturating_mul(i);
        }
    }
    assert!(candidates <= CLOSURE_CAP as u128, "too many candidate bijections for the oracle");
    let n = g.n();
    let mut images = vec![usize::MAX; n];
    let mut out = Vec::new();
    fill_class(g, &classes, 0, &mut images, &mut out);
    out.sort_by(|a, b| a.images().cmp(b.images()));
    out
}

fn fill_class(
    g: &ColoredGraph,
    classes: &[Vec<usize>],
    class_idx: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if class_idx == classes.len() {
        let perm = Permutation::from_images(images.clone()).expect("bijection by construction");
        if g.is_automorphism(&perm) {
            out.push(perm);
        }
        return;
    }
    let class = &classes[class_idx];
    let mut taken = vec![false; class.len()];
    permute_class(g, classes, class_idx, class, 0, &mut taken, images, out);
}

fn permute_class(
    g: &ColoredGraph,
    classes: &[Vec<usize>],
    class_idx: usize,
    class: &[usize],
    pos: usize,
    taken: &mut Vec<bool>,
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if pos == class.len() {
        fill_class(g, classes, class_idx + 1, images, out);
        return;
    }
    for slot in 0..class.len() {
        if taken[slot] {
            continue;
        }
        taken[slot] = true;
        images[class[pos]] = class[slot];
        permute_class(g, classes, class_idx, class, pos + 1, taken, images, out);
        images[class[pos]] = usize::MAX;
        taken[slot] = false;
    }
}

/// Whether fixing `set` pointwise kills every nontrivial automorphism.
pub fn is_fixing_set_elements(automorphisms: &[Permutation], set: &[usize]) -> bool {
    automorphisms
        .iter()
        .filter(|a| set.iter().all(|&p| a.apply(p) == p))
        .all(|a| a.is_identity())
}

/// Lexicographically least minimum fixing set via subset scan.
pub fn brute_min_fixing_set(g: &ColoredGraph) -> Vec<usize> {
    let auts = brute_automorphisms(g);
    for size in 0..=g.n() {
        for subset in Subsets::new(g.n(), size) {
            if is_fixing_set_elements(&auts, &subset) {
                return subset;
            }
        }
    }
    unreachable!("the full vertex set is always fixing");
}

/// Naive color refinement: relabel each vertex by (color, sorted multiset
/// of neighbor colors) until the number of classes stops growing, for at
/// most `max_rounds` rounds. Returns dense labels ordered by
/// (old label, signature), which keeps them comparable across rounds.
pub fn naive_refine(g: &ColoredGraph, initial: &[usize], max_rounds: usize) -> Vec<usize> {
    assert_eq!(initial.len(), g.n());
    let mut labels: Vec<usize> = initial.to_vec();
    for _ in 0..max_rounds {
        let mut keyed: Vec<(usize, Vec<usize>, usize)> = (0..g.n())
            .map(|v| {
                let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&u| labels[u]).collect();
                sig.sort_unstable();
                (labels[v], sig, v)
            })
            .collect();
        keyed.sort();
        let mut next = vec![0usize; g.n()];
        let mut current = 0;
        for i in 0..keyed.len() {
            if i > 0 && (keyed[i].0, &keyed[i].1) != (keyed[i - 1].0, &keyed[i - 1].1) {
                current += 1;
            }
            next[keyed[i].2] = current;
        }
        let old_count = count_distinct(&labels);
        let new_count = count_distinct(&next);
        labels = next;
        if new_count == old_count {
            break;
        }
    }
    labels
}

/// Naive stable refinement (round limit `n`).
pub fn naive_stable(g: &ColoredGraph, initial: &[usize]) -> Vec<usize> {
    naive_refine(g, initial, g.n().max(1))
}

fn count_distinct(labels: &[usize]) -> usize {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Initial labels with each vertex of `set` given a fresh label, in the
/// order listed.
pub fn naive_individualize(g: &ColoredGraph, set: &[usize]) -> Vec<usize> {
    let mut labels = g.colors().to_vec();
    let mut next = g.num_colors();
    for &v in set {
        labels[v] = next;
        next += 1;
    }
    labels
}

/// Whether the label vector has all-singleton classes.
pub fn labels_discrete(labels: &[usize]) -> bool {
    count_distinct(labels) == labels.len()
}

/// Two label vectors describe the same partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    assert_eq!(a.len(), b.len());
    let mut map_ab = std::collections::HashMap::new();
    let mut map_ba = std::collections::HashMap::new();
    for i in 0..a.len() {
        if *map_ab.entry(a[i]).or_insert(b[i]) != b[i] {
            return false;
        }
        if *map_ba.entry(b[i]).or_insert(a[i]) != a[i] {
            return false;
        }
    }
    true
}

/// Lexicographically least exact-size hiding set for which naive
/// individualize-and-refine ends discrete, or `None`.
pub fn brute_hidden_discrete(g: &ColoredGraph, k: usize) -> Option<Vec<usize>> {
    if k > g.n() {
        return None;
    }
    let all: Vec<usize> = (0..g.n()).collect();
    for subset in Subsets::new(g.n(), k) {
        let hidden: HashSet<usize> = subset.iter().copied().collect();
        let shown: Vec<usize> = all.iter().copied().filter(|v| !hidden.contains(v)).collect();
        let labels = naive_individualize(g, &shown);
        if labels_discrete(&naive_stable(g, &labels)) {
            return Some(subset);
        }
    }
    None
}

/// Lexicographically least exact-size vertex set whose individualization
/// moves the graph into the class named by `tag`, deciding each candidate
/// with the naive refiner and the brute-force automorphism list. Decides
/// the discrete, bounded-round discrete, refinable and rigid tags; the
/// amenable and compact classes have no brute-force membership test.
///
/// # Errors
/// Returns [`Error::UndecidedMembership`] for the amenable and compact tags.
///
/// # Panics
/// Panics for the refinable and rigid tags if the candidate bijection
/// count of the individualized graph exceeds [`CLOSURE_CAP`].
pub fn brute_k_class(g: &ColoredGraph, k: usize, tag: ClassTag) -> Result<Option<Vec<usize>>> {
    let in_class = |labels: &[usize]| match tag {
        ClassTag::Discrete => labels_discrete(&naive_stable(g, labels)),
        ClassTag::DiscreteWithin(l) => labels_discrete(&naive_refine(g, labels, l)),
        ClassTag::Rigid | ClassTag::Refinable => {
            let ind = ColoredGraph::new(g.n(), g.edges().to_vec(), densify(labels))
                .expect("densified labels are valid colors");
            let auts = brute_automorphisms(&ind);
            if tag == ClassTag::Rigid {
                auts.len() == 1
            } else {
                let mut orbit_labels = vec![0usize; g.n()];
                for (i, orbit) in brute_orbits(g.n(), &auts).iter().enumerate() {
                    for &v in orbit {
                        orbit_labels[v] = i;
                    }
                }
                same_partition(&naive_stable(g, labels), &orbit_labels)
            }
        }
        ClassTag::Amenable | ClassTag::Compact => {
            unreachable!("undecided tags are rejected before the scan")
        }
    };
    let name = match tag {
        ClassTag::Amenable => Some("amenable"),
        ClassTag::Compact => Some("compact"),
        _ => None,
    };
    if let Some(tag) = name {
        return Err(Error::UndecidedMembership { tag });
    }
    if k > g.n() {
        return Ok(None);
    }
    for subset in Subsets::new(g.n(), k) {
        if in_class(&naive_individualize(g, &subset)) {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

/// Color valence of a labeling: the maximum over vertices `v` and label
/// classes `C` of `min(deg_C(v), |C| - deg_C(v))`, where `|C|` counts `v`
/// itself when `v` is in `C`.
fn naive_valence(g: &ColoredGraph, labels: &[usize]) -> usize {
    let dense = densify(labels);
    let count = dense.iter().max().map_or(0, |&c| c + 1);
    let mut size = vec![0usize; count];
    for &c in &dense {
        size[c] += 1;
    }
    let mut valence = 0;
    for v in 0..g.n() {
        let mut deg = vec![0usize; count];
        for &u in g.neighbors(v) {
            deg[dense[u]] += 1;
        }
        for c in 0..count {
            valence = valence.max(deg[c].min(size[c] - deg[c]));
        }
    }
    valence
}

/// Lexicographically least exact-size individualization set after which
/// the naive stable labeling has color valence at most `d`, or `None`.
pub fn brute_color_valence_search(g: &ColoredGraph, k: usize, d: usize) -> Option<Vec<usize>> {
    if k > g.n() {
        return None;
    }
    for subset in Subsets::new(g.n(), k) {
        let labels = naive_stable(g, &naive_individualize(g, &subset));
        if naive_valence(g, &labels) <= d {
            return Some(subset);
        }
    }
    None
}

/// Lexicographically least dominating set of size exactly `k`, or `None`.
pub fn brute_dominating_set(g: &ColoredGraph, k: usize) -> Option<Vec<usize>> {
    if k > g.n() {
        return None;
    }
    'outer: for subset in Subsets::new(g.n(), k) {
        let chosen: HashSet<usize> = subset.iter().copied().collect();
        for v in 0..g.n() {
            if !chosen.contains(&v) && !g.neighbors(v).iter().any(|u| chosen.contains(u)) {
                continue 'outer;
            }
        }
        return Some(subset);
    }
    None
}

/// Minimum number of sets covering `0..universe`, by scanning cover sizes.
/// Returns `None` if even the union of all sets falls short.
pub fn brute_min_cover(universe: usize, sets: &[Vec<usize>]) -> Option<usize> {
    let covers = |chosen: &[usize]| {
        let mut hit = vec![false; universe];
        for &s in chosen {
            for &e in &sets[s] {
                hit[e] = true;
            }
        }
        hit.iter().all(|&h| h)
    };
    for size in 0..=sets.len() {
        if Subsets::new(sets.len(), size).any(|subset| covers(&subset)) {
            return Some(size);
        }
    }
    None
}

/// Smallest size (with its lexicographically least witness) for which a
/// subset of `0..n` passes `test`, scanning sizes `0..=max_size`.
pub fn brute_min_subset<F: FnMut(&[usize]) -> bool>(
    n: usize,
    max_size: usize,
    mut test: F,
) -> Option<(usize, Vec<usize>)> {
    for size in 0..=max_size.min(n) {
        for subset in Subsets::new(n, size) {
            if test(&subset) {
                return Some((size, subset));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_transposition_and_cycle_is_symmetric() {
        let gens = vec![
            Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
        ];
        assert_eq!(closure_elements(4, &gens).len(), 24);
    }

    #[test]
    fn brute_min_base_of_cyclic_group() {
        let gens = vec![Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap()];
        let elements = closure_elements(5, &gens);
        assert_eq!(brute_min_base(5, &elements), vec![0]);
    }

    #[test]
    fn naive_refinement_separates_path_center() {
        let g = ColoredGraph::uniform(3, vec![(0, 1), (1, 2)]).unwrap();
        let stable = naive_stable(&g, g.colors());
        assert!(same_partition(&stable, &[0, 1, 0]));
    }

    #[test]
    fn automorphisms_of_a_square() {
        let g = ColoredGraph::uniform(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(brute_automorphisms(&g).len(), 8);
        assert_eq!(brute_min_fixing_set(&g), vec![0, 1]);
    }

    #[test]
    fn hidden_discrete_on_edge_plus_isolated_vertex() {
        // Hiding {a, b} works because the individualized middle vertex
        // separates them; hiding any pair containing vertex 1 fails.
        let g = ColoredGraph::uniform(3, vec![(0, 1)]).unwrap();
        assert_eq!(brute_hidden_discrete(&g, 2), Some(vec![0, 2]));
    }

    #[test]
    fn k_class_scan_matches_the_fast_search() {
        let square = ColoredGraph::uniform(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let path = ColoredGraph::uniform(3, vec![(0, 1), (1, 2)]).unwrap();
        for g in [&square, &path] {
            for k in 0..=2 {
                for tag in [
                    ClassTag::Discrete,
                    ClassTag::DiscreteWithin(1),
                    ClassTag::Refinable,
                    ClassTag::Rigid,
                ] {
                    let brute = brute_k_class(g, k, tag).unwrap();
                    let fast = crate::classes::k_class_search(g, k, tag).unwrap();
                    assert_eq!(brute.is_some(), fast.answer, "{tag:?} k={k}");
                    assert_eq!(brute, fast.witness, "{tag:?} k={k}");
                }
            }
        }
        assert!(matches!(
            brute_k_class(&path, 1, ClassTag::Amenable),
            Err(Error::UndecidedMembership { tag: "amenable" })
        ));
    }

    #[test]
    fn valence_scan_matches_the_fast_search() {
        let square = ColoredGraph::uniform(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for k in 0..=2 {
            for d in 0..=2 {
                let brute = brute_color_valence_search(&square, k, d);
                let fast = crate::classes::k_color_valence(&square, k, d);
                assert_eq!(brute.is_some(), fast.answer, "k={k} d={d}");
                assert_eq!(brute, fast.witness, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn dominating_set_of_a_star() {
        let g = ColoredGraph::uniform(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(brute_dominating_set(&g, 1), Some(vec![0]));
        let g2 = ColoredGraph::uniform(2, vec![]).unwrap();
        assert_eq!(brute_dominating_set(&g2, 1), None);
    }

    #[test]
    fn min_cover_picks_fewest_sets() {
        let sets = vec![vec![0, 1], vec![2], vec![0, 1, 2]];
        assert_eq!(brute_min_cover(3, &sets), Some(1));
        assert_eq!(brute_min_cover(4, &sets), None);
    }
}
