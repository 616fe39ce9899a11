//! Class-membership tests and exhaustive individualization searches.
//!
//! A membership test asks whether a colored graph lies in one of the
//! refinement-based classes (discrete, bounded-round discrete, amenable,
//! compact, refinable, rigid). The search ops ask whether individualizing
//! `k` vertices can move a graph into a class, scanning subsets in
//! lexicographic order so reported witnesses are reproducible.

use rayon::prelude::*;

use crate::aut::automorphism_group;
use crate::base::is_base;
use crate::graph::ColoredGraph;
use crate::group::schreier_stabilizer_gens;
use crate::perm::Permutation;
use crate::refine::{
    color_valence, individualize, is_discrete, is_discrete_within, stable_coloring, Coloring,
};
use crate::{bounded3, combin, Result};

/// Target class for membership tests and individualization searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassTag {
    /// The stable coloring has singleton cells only.
    Discrete,
    /// Discrete within the given number of refinement rounds.
    DiscreteWithin(usize),
    /// Every linked component of the normalized graph is a forest.
    /// Decidable for 3-bounded graphs only.
    Amenable,
    /// Every linked component passes the compactness case rules.
    /// Decidable for 3-bounded graphs only.
    Compact,
    /// The stable partition equals the automorphism orbit partition.
    Refinable,
    /// The automorphism group is trivial.
    Rigid,
}

/// Outcome of a search op: the answer, a witness vertex set when the answer
/// is yes, and the number of candidate subsets a sequential scan examines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub answer: bool,
    pub witness: Option<Vec<usize>>,
    pub work: u64,
}

/// Whether the stable partition equals the orbit partition of the
/// automorphism group. Orbits always refine stable cells, so this detects
/// exactly the graphs whose refinement loses no symmetry information.
pub fn is_refinable(graph: &ColoredGraph) -> bool {
    let trace = stable_coloring(graph);
    let aut = automorphism_group(graph);
    let mut labels = vec![0usize; graph.n()];
    for (i, orbit) in aut.group.orbits().iter().enumerate() {
        for &v in orbit {
            labels[v] = i;
        }
    }
    trace.stable().same_partition(&Coloring::from_labels(&labels))
}

/// Whether the graph belongs to the class named by `tag`.
///
/// # Errors
/// Returns an error for the amenable and compact tags when the graph is not
/// 3-bounded; those classes have no general test here.
pub fn membership(graph: &ColoredGraph, tag: ClassTag) -> Result<bool> {
    match tag {
        ClassTag::Discrete => Ok(is_discrete(graph)),
        ClassTag::DiscreteWithin(l) => Ok(is_discrete_within(graph, l)),
        ClassTag::Amenable => bounded3::is_amenable_3bounded(graph),
        ClassTag::Compact => bounded3::is_compact_3bounded(graph),
        ClassTag::Refinable => Ok(is_refinable(graph)),
        ClassTag::Rigid => Ok(automorphism_group(graph).group.is_trivial()),
    }
}

/// Scans k-subsets of `0..n` in lexicographic order for the first one that
/// passes `test`. Returns the witness and the number of subsets a sequential
/// scan examines (witness rank plus one, or the total count when none
/// passes), so the reported work does not depend on the worker count.
pub(crate) fn scan_subsets<F>(n: usize, k: usize, test: F) -> (Option<Vec<usize>>, u64)
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    match combin::binomial(n, k).and_then(|c| usize::try_from(c).ok()) {
        Some(count) => match (0..count)
            .into_par_iter()
            .find_first(|&rank| test(&combin::unrank(n, k, rank as u128)))
        {
            Some(rank) => (Some(combin::unrank(n, k, rank as u128)), rank as u64 + 1),
            None => (None, count as u64),
        },
        None => {
            let mut rank: u64 = 0;
            for s in combin::Subsets::new(n, k) {
                rank = rank.saturating_add(1);
                if test(&s) {
                    return (Some(s), rank);
                }
            }
            (None, rank)
        }
    }
}

/// Number of orbits of the group generated by `gens` on `0..n`.
fn orbit_count(n: usize, gens: &[Permutation]) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Searches for `k` vertices whose individualization moves the graph into
/// the class named by `tag`. Subsets are scanned lexicographically and the
/// lexicographically least witness is reported regardless of worker count.
///
/// The rigid and refinable tags avoid re-running the automorphism search per
/// subset: the automorphism group of an individualized graph is the
/// pointwise stabilizer of the individualized set (fresh colors force every
/// automorphism to fix those vertices), so rigidity is a base test and
/// refinability compares stable cell counts with stabilizer orbit counts.
///
/// # Errors
/// Returns an error for the amenable and compact tags when the input graph
/// is not 3-bounded. Individualization only refines the stable partition,
/// so 3-boundedness of the input carries over to every scanned subset.
pub fn k_class_search(graph: &ColoredGraph, k: usize, tag: ClassTag) -> Result<SolveReport> {
    let n = graph.n();
    if k > n {
        return Ok(SolveReport { answer: false, witness: None, work: 0 });
    }
    if matches!(tag, ClassTag::Amenable | ClassTag::Compact) {
        bounded3::normalize_3bounded(graph)?;
    }
    let (witness, work) = match tag {
        ClassTag::Rigid => {
            let aut = automorphism_group(graph);
            scan_subsets(n, k, |s| {
                is_base(&aut.group, s).expect("subset points are within the domain")
            })
        }
        ClassTag::Refinable => {
            let aut = automorphism_group(graph);
            scan_subsets(n, k, |s| {
                let ind = individualize(graph, s).expect("subset vertices are in range");
                let cells = stable_coloring(&ind).stable().num_cells();
                let stab = schreier_stabilizer_gens(n, aut.group.generators(), s);
                orbit_count(n, &stab) == cells
            })
        }
        _ => scan_subsets(n, k, |s| {
            let ind = individualize(graph, s).expect("subset vertices are in range");
            membership(&ind, tag).expect("individualization preserves class-size bounds")
        }),
    };
    Ok(SolveReport { answer: witness.is_some(), witness, work })
}

/// Searches for `k` vertices whose individualization brings the color
/// valence of the refined graph down to at most `d`. The valence formula is
/// evaluated literally on the stable recoloring; valence 0 does not imply
/// discreteness (complete relations between surviving classes also score 0).
pub fn k_color_valence(graph: &ColoredGraph, k: usize, d: usize) -> SolveReport {
    let n = graph.n();
    if k > n {
        return SolveReport { answer: false, witness: None, work: 0 };
    }
    let (witness, work) = scan_subsets(n, k, |s| {
        let ind = individualize(graph, s).expect("subset vertices are in range");
        let refined = stable_coloring(&ind).stable().recolor(&ind);
        color_valence(&refined) <= d
    });
    SolveReport { answer: witness.is_some(), witness, work }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::Error;
    use proptest::prelude::*;

    fn cycle_graph(n: usize) -> ColoredGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ColoredGraph::uniform(n, edges).unwrap()
    }

    fn triangle_plus_path3() -> ColoredGraph {
        ColoredGraph::uniform(6, vec![(0, 1), (0, 2), (1, 2), (3, 4), (4, 5)]).unwrap()
    }

    fn triangle_plus_square() -> ColoredGraph {
        ColoredGraph::uniform(7, vec![(0, 1), (0, 2), (1, 2), (3, 4), (4, 5), (5, 6), (3, 6)])
            .unwrap()
    }

    #[test]
    fn refinable_examples() {
        assert!(is_refinable(&cycle_graph(4)));
        assert!(is_refinable(&ColoredGraph::new(2, vec![], vec![0, 1]).unwrap()));
        // Refinement separates the path middle from the cycle vertices, and
        // the stable cells match the orbits exactly.
        assert!(is_refinable(&triangle_plus_path3()));
        // One stable class of size 7, but no automorphism maps the 3-cycle
        // into the 4-cycle.
        assert!(!is_refinable(&triangle_plus_square()));
    }

    #[test]
    fn refinable_agrees_with_brute_force_partitions() {
        for g in [cycle_graph(4), triangle_plus_path3(), triangle_plus_square()] {
            let stable = oracle::naive_stable(&g, g.colors());
            let auts = oracle::brute_automorphisms(&g);
            let mut labels = vec![usize::MAX; g.n()];
            let mut next = 0;
            for v in 0..g.n() {
                if labels[v] != usize::MAX {
                    continue;
                }
                for a in &auts {
                    labels[a.apply(v)] = next;
                }
                next += 1;
            }
            let expected = oracle::same_partition(&stable, &labels);
            assert_eq!(is_refinable(&g), expected);
        }
    }

    #[test]
    fn membership_examples() {
        let single = ColoredGraph::uniform(1, vec![]).unwrap();
        for tag in [
            ClassTag::Discrete,
            ClassTag::DiscreteWithin(0),
            ClassTag::Amenable,
            ClassTag::Compact,
            ClassTag::Refinable,
            ClassTag::Rigid,
        ] {
            assert!(membership(&single, tag).unwrap(), "single vertex fails {tag:?}");
        }
        let k2 = ColoredGraph::uniform(2, vec![(0, 1)]).unwrap();
        assert!(!membership(&k2, ClassTag::Rigid).unwrap());
        assert!(membership(&k2, ClassTag::Refinable).unwrap());
        assert!(!membership(&k2, ClassTag::Discrete).unwrap());
    }

    #[test]
    fn membership_rejects_unbounded_classes() {
        let k4 = ColoredGraph::uniform(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert!(matches!(
            membership(&k4, ClassTag::Amenable),
            Err(Error::NotThreeBounded { size: 4 })
        ));
        assert!(matches!(
            membership(&k4, ClassTag::Compact),
            Err(Error::NotThreeBounded { size: 4 })
        ));
    }

    #[test]
    fn class_search_examples() {
        let discrete = ColoredGraph::new(3, vec![(0, 1)], vec![0, 1, 2]).unwrap();
        let report = k_class_search(&discrete, 0, ClassTag::Discrete).unwrap();
        assert!(report.answer);
        assert_eq!(report.witness, Some(vec![]));

        let c4 = cycle_graph(4);
        let report = k_class_search(&c4, 1, ClassTag::Discrete).unwrap();
        assert!(!report.answer);
        assert_eq!(report.work, 4);

        let report = k_class_search(&c4, 2, ClassTag::Discrete).unwrap();
        assert!(report.answer);
        assert_eq!(report.witness, Some(vec![0, 1]));
        assert_eq!(report.work, 1);
    }

    #[test]
    fn class_search_oversized_k_answers_no() {
        let k2 = ColoredGraph::uniform(2, vec![(0, 1)]).unwrap();
        let report = k_class_search(&k2, 3, ClassTag::Discrete).unwrap();
        assert!(!report.answer);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn color_valence_examples() {
        let edgeless = ColoredGraph::uniform(3, vec![]).unwrap();
        assert!(k_color_valence(&edgeless, 0, 0).answer);

        let c4 = cycle_graph(4);
        assert!(k_color_valence(&c4, 0, 2).answer);
        assert!(!k_color_valence(&c4, 0, 1).answer);
    }

    #[test]
    fn valence_zero_does_not_force_discreteness() {
        // Two classes joined completely score valence 0 on both sides while
        // the coloring stays far from discrete.
        let g = ColoredGraph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)], vec![0, 0, 1, 1])
            .unwrap();
        assert!(k_color_valence(&g, 0, 0).answer);
        assert!(!k_class_search(&g, 0, ClassTag::Discrete).unwrap().answer);
    }

    fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = ColoredGraph> {
        (2..=max_n)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                (Just(n), proptest::collection::vec(any::<bool>(), pairs.len()))
            })
            .prop_map(|(n, mask)| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let edges = pairs
                    .into_iter()
                    .zip(mask)
                    .filter_map(|(e, keep)| keep.then_some(e))
                    .collect();
                ColoredGraph::uniform(n, edges).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn rigid_search_matches_literal_membership(g in arbitrary_graph(6), k in 0usize..=2) {
            let fast = k_class_search(&g, k, ClassTag::Rigid).unwrap();
            let (witness, _) = scan_subsets(g.n(), k.min(g.n()), |s| {
                let ind = individualize(&g, s).unwrap();
                membership(&ind, ClassTag::Rigid).unwrap()
            });
            prop_assert_eq!(fast.answer, witness.is_some());
            prop_assert_eq!(fast.witness, witness);
        }

        #[test]
        fn refinable_search_matches_literal_membership(g in arbitrary_graph(6), k in 0usize..=2) {
            let fast = k_class_search(&g, k, ClassTag::Refinable).unwrap();
            let (witness, _) = scan_subsets(g.n(), k.min(g.n()), |s| {
                let ind = individualize(&g, s).unwrap();
                membership(&ind, ClassTag::Refinable).unwrap()
            });
            prop_assert_eq!(fast.answer, witness.is_some());
            prop_assert_eq!(fast.witness, witness);
        }

        #[test]
        fn search_witnesses_replay(g in arbitrary_graph(6), k in 0usize..=2) {
            let report = k_class_search(&g, k, ClassTag::Discrete).unwrap();
            if let Some(s) = report.witness {
                let ind = individualize(&g, &s).unwrap();
                prop_assert!(membership(&ind, ClassTag::Discrete).unwrap());
            }
        }
    }
}
