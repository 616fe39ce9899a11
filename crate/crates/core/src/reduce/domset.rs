//! Dominating set encoded as discreteness within a fixed round budget.
//!
//! Every input vertex `v` becomes two parallel paths `v_1..v_l` and
//! `v'_1..v'_l`, joined along the input edges at level 1. Splitting the
//! rung `{v_i, v'_i}` takes an individualized vertex within refinement
//! distance, and the only rungs that split on their own sit next to a
//! neighbor whose level-1 rung is already split, so individualizing
//! `v_1` for every `v` in a dominating set is both sufficient and, up to
//! exchanging a deeper chain vertex for its `v_1`, necessary. The
//! colored variant gives each rung its own two-vertex color class. The
//! uncolored variant simulates those classes with a block of vertices
//! `x_1..x_{n^2}` whose degrees separate them in one round, plus two
//! twin pairs `y, y'` and `z, z'` the refiner can never split, raising
//! the budget to `k + 2`.

use crate::graph::ColoredGraph;
use crate::{Error, Result};

/// Which output flavor `domset_to_kdiscrete` builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomsetVariant {
    /// Two-vertex color class per rung; the budget stays `k`.
    Colored,
    /// Uniformly colored; a degree-coding block replaces the rung colors
    /// and the budget grows to `k + 2`.
    Uncolored,
}

/// A dominating set instance compiled to a round-bounded discreteness
/// instance.
#[derive(Clone, Debug)]
pub struct DomsetInstance {
    /// The output graph.
    pub graph: ColoredGraph,
    /// Individualization budget for the output graph.
    pub k_out: usize,
    /// Refinement round bound.
    pub l: usize,
    /// Output flavor.
    pub variant: DomsetVariant,
    /// Input vertices with chains in the output, ascending; chain slot
    /// `s` encodes `kept[s]`.
    pub kept: Vec<usize>,
    /// Isolated input vertices dropped in advance. Each of them sits in
    /// every dominating set, so the budget shrank by their count.
    pub removed: Vec<usize>,
}

impl DomsetInstance {
    /// Output vertex for chain slot `slot` at level `i` (1-based), on
    /// the primed or unprimed path.
    ///
    /// # Panics
    /// Panics if the slot or level is out of range.
    pub fn chain_vertex(&self, slot: usize, i: usize, primed: bool) -> usize {
        assert!(slot < self.kept.len() && i >= 1 && i <= self.l);
        2 * self.l * slot + 2 * (i - 1) + usize::from(primed)
    }

    /// Vertex indices `[y, y', z, z']` of the helper twin pairs; present
    /// on the uncolored variant only.
    pub fn twin_block(&self) -> Option<[usize; 4]> {
        match self.variant {
            DomsetVariant::Colored => None,
            DomsetVariant::Uncolored => {
                let n = self.kept.len();
                let base = 2 * self.l * n + n * n;
                Some([base, base + 1, base + 2, base + 3])
            }
        }
    }

    /// Output witness for a dominating set of the input: the level-1
    /// unprimed chain vertex of every kept member, plus one vertex of
    /// each helper twin pair on the uncolored variant.
    pub fn witness_for(&self, dominating: &[usize]) -> Vec<usize> {
        let mut witness = Vec::new();
        for &v in dominating {
            if let Ok(slot) = self.kept.binary_search(&v) {
                witness.push(self.chain_vertex(slot, 1, false));
            }
        }
        if let Some([y, _, z, _]) = self.twin_block() {
            witness.push(y);
            witness.push(z);
        }
        witness
    }
}

/// Compiles a dominating set instance `(x, k)` into a graph that lands
/// in Discrete[`l`] under some `k_out`-vertex individualization exactly
/// when `x` has a dominating set of `k` vertices.
///
/// The uncolored variant needs every chain to reach the degree-coding
/// block through at least one input edge, so it removes isolated
/// vertices up front and lowers the budget by their count; they belong
/// to every dominating set.
///
/// # Errors
/// Rejects a round bound of zero, a budget above the input vertex
/// count, and an uncolored request with more isolated vertices than the
/// budget covers. An uncolored build whose degree coding misses the
/// expected twin pairs or degree sequence fails the generator check.
pub fn domset_to_kdiscrete(
    x: &ColoredGraph,
    k: usize,
    l: usize,
    variant: DomsetVariant,
) -> Result<DomsetInstance> {
    if l == 0 {
        return Err(Error::InvalidInput("the round bound l must be at least 1".into()));
    }
    if k > x.n() {
        return Err(Error::InvalidInput(format!(
            "a dominating set of size {k} needs {k} of the {} input vertices",
            x.n()
        )));
    }
    let (kept, removed) = match variant {
        DomsetVariant::Colored => ((0..x.n()).collect::<Vec<_>>(), Vec::new()),
        DomsetVariant::Uncolored => (0..x.n()).partition(|&v| x.degree(v) > 0),
    };
    if removed.len() > k {
        return Err(Error::InvalidInput(format!(
            "{} isolated vertices exceed the budget {k}; each needs its own slot",
            removed.len()
        )));
    }
    let n = kept.len();
    let mut slot_of = vec![usize::MAX; x.n()];
    for (slot, &v) in kept.iter().enumerate() {
        slot_of[v] = slot;
    }
    let chain = |slot: usize, i: usize, primed: usize| 2 * l * slot + 2 * (i - 1) + primed;

    let mut edges = Vec::new();
    for slot in 0..n {
        for i in 1..l {
            edges.push((chain(slot, i, 0), chain(slot, i + 1, 0)));
            edges.push((chain(slot, i, 1), chain(slot, i + 1, 1)));
        }
    }
    for &(u, v) in x.edges() {
        let (su, sv) = (slot_of[u], slot_of[v]);
        if su != usize::MAX && sv != usize::MAX {
            edges.push((chain(su, 1, 0), chain(sv, 1, 0)));
            edges.push((chain(su, 1, 1), chain(sv, 1, 1)));
        }
    }

    let graph = match variant {
        DomsetVariant::Colored => {
            let mut colors = vec![0; 2 * l * n];
            for slot in 0..n {
                for i in 1..=l {
                    colors[chain(slot, i, 0)] = l * slot + (i - 1);
                    colors[chain(slot, i, 1)] = l * slot + (i - 1);
                }
            }
            ColoredGraph::new(2 * l * n, edges, colors)?
        }
        DomsetVariant::Uncolored => {
            let x_vertex = |t: usize| 2 * l * n + (t - 1);
            let square = n * n;
            for s in 1..=square {
                for t in s + 1..=square {
                    if s + t <= square + 1 {
                        edges.push((x_vertex(s), x_vertex(t)));
                    }
                }
            }
            for slot in 0..n {
                for t in 1..=(slot + 1) * n {
                    edges.push((chain(slot, 1, 0), x_vertex(t)));
                    edges.push((chain(slot, 1, 1), x_vertex(t)));
                }
            }
            let base = 2 * l * n + square;
            let [y, y2, z, z2] = [base, base + 1, base + 2, base + 3];
            for t in 1..=square {
                edges.push((y, x_vertex(t)));
                edges.push((y2, x_vertex(t)));
            }
            edges.push((z, z2));
            if square > 0 {
                let tie = square.div_ceil(2);
                edges.push((z, x_vertex(tie)));
                edges.push((z2, x_vertex(tie)));
            }
            let graph = ColoredGraph::uniform(2 * l * n + square + 4, edges)?;
            check_degree_coding(&graph, n, l)?;
            graph
        }
    };
    let k_out = match variant {
        DomsetVariant::Colored => k,
        DomsetVariant::Uncolored => k - removed.len() + 2,
    };
    Ok(DomsetInstance { graph, k_out, l, variant, kept, removed })
}

/// Verifies the degree coding of an uncolored output: the helper pairs
/// are the only twins, the block degrees decrease strictly once the tie
/// broken by `z` is discounted, and the level-1 chain degrees fall into
/// disjoint bands ordered by slot.
fn check_degree_coding(g: &ColoredGraph, n: usize, l: usize) -> Result<()> {
    let square = n * n;
    let base = 2 * l * n + square;
    let twins: Vec<Vec<usize>> =
        g.twin_classes().into_iter().filter(|class| class.len() > 1).collect();
    if twins != vec![vec![base, base + 1], vec![base + 2, base + 3]] {
        return Err(Error::GeneratorCheck(format!(
            "expected exactly the twin pairs y,y' and z,z', found {twins:?}"
        )));
    }
    let tie = square.div_ceil(2);
    let coded = |t: usize| g.degree(2 * l * n + t - 1) - if t == tie { 2 } else { 0 };
    for t in 1..square {
        let (here, next) = (coded(t), coded(t + 1));
        let ok = if t == tie { here >= next } else { here > next };
        if !ok {
            return Err(Error::GeneratorCheck(format!(
                "block degrees fail to decrease at x_{t}: {here} then {next}"
            )));
        }
    }
    for slot in 1..n {
        if g.degree(2 * l * (slot - 1)) >= g.degree(2 * l * slot) {
            return Err(Error::GeneratorCheck(format!(
                "level-1 degree bands collide between slots {} and {slot}",
                slot - 1
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{k_class_search, ClassTag};
    use crate::oracle::brute_dominating_set;
    use crate::refine;

    fn path(n: usize) -> ColoredGraph {
        ColoredGraph::uniform(n, (1..n).map(|v| (v - 1, v)).collect()).unwrap()
    }

    fn answers(x: &ColoredGraph, k: usize, l: usize, variant: DomsetVariant) -> (bool, bool) {
        let inst = domset_to_kdiscrete(x, k, l, variant).unwrap();
        let report =
            k_class_search(&inst.graph, inst.k_out, ClassTag::DiscreteWithin(l)).unwrap();
        (brute_dominating_set(x, k).is_some(), report.answer)
    }

    #[test]
    fn colored_path_individualizes_from_the_center() {
        let x = path(3);
        for l in 1..=2 {
            let inst = domset_to_kdiscrete(&x, 1, l, DomsetVariant::Colored).unwrap();
            assert_eq!(inst.graph.n(), 6 * l);
            assert_eq!(inst.graph.num_colors(), 3 * l);
            assert_eq!(inst.k_out, 1);
            let witness = inst.witness_for(&brute_dominating_set(&x, 1).unwrap());
            assert_eq!(witness, vec![inst.chain_vertex(1, 1, false)]);
            let pinned = refine::individualize(&inst.graph, &witness).unwrap();
            assert!(refine::is_discrete_within(&pinned, l));
        }
    }

    #[test]
    fn colored_output_is_two_bounded() {
        let inst = domset_to_kdiscrete(&path(3), 1, 2, DomsetVariant::Colored).unwrap();
        let mut sizes = vec![0usize; inst.graph.num_colors()];
        for &c in inst.graph.colors() {
            sizes[c] += 1;
        }
        assert!(sizes.iter().all(|&s| s == 2));
    }

    #[test]
    fn colored_matches_brute_force_on_small_graphs() {
        let mut pairs = Vec::new();
        for n in 1..=4usize {
            let slots: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0..1u32 << slots.len() {
                let edges: Vec<(usize, usize)> = slots
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let x = ColoredGraph::uniform(n, edges).unwrap();
                for k in 0..=2.min(n) {
                    for l in 1..=2 {
                        let (brute, reduced) = answers(&x, k, l, DomsetVariant::Colored);
                        assert_eq!(brute, reduced, "n={n} mask={mask} k={k} l={l}");
                        pairs.push(brute);
                    }
                }
            }
        }
        assert!(pairs.iter().any(|&b| b) && pairs.iter().any(|&b| !b));
    }

    #[test]
    fn uncolored_two_vertex_layout_is_frozen() {
        let x = path(2);
        let inst = domset_to_kdiscrete(&x, 1, 1, DomsetVariant::Uncolored).unwrap();
        assert_eq!(inst.graph.n(), 12);
        assert_eq!(inst.k_out, 3);
        assert!(inst.graph.is_uniformly_colored());
        let block: Vec<usize> = (0..4).map(|t| inst.graph.degree(4 + t)).collect();
        assert_eq!(block, vec![9, 10, 6, 5]);
        assert_eq!(inst.twin_block(), Some([8, 9, 10, 11]));
        let witness = inst.witness_for(&[0]);
        assert_eq!(witness, vec![0, 8, 10]);
        let pinned = refine::individualize(&inst.graph, &witness).unwrap();
        assert!(refine::is_discrete_within(&pinned, 1));
    }

    #[test]
    fn uncolored_matches_brute_force_on_fixed_graphs() {
        let two_edges = ColoredGraph::uniform(4, vec![(0, 1), (2, 3)]).unwrap();
        let triangle = ColoredGraph::uniform(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let cycle5 =
            ColoredGraph::uniform(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let path3 = path(3);
        let path4 = path(4);
        let cases: Vec<(&ColoredGraph, usize, usize)> = vec![
            (&two_edges, 1, 1),
            (&two_edges, 2, 1),
            (&triangle, 1, 1),
            (&triangle, 1, 2),
            (&cycle5, 1, 1),
            (&path3, 1, 1),
            (&path3, 1, 2),
            (&path4, 1, 1),
            (&path4, 2, 1),
        ];
        let mut seen = (false, false);
        for (x, k, l) in cases {
            let (brute, reduced) = answers(x, k, l, DomsetVariant::Uncolored);
            assert_eq!(brute, reduced, "n={} k={k} l={l}", x.n());
            seen = (seen.0 || brute, seen.1 || !brute);
        }
        assert_eq!(seen, (true, true));
    }

    #[test]
    fn uncolored_removes_isolated_vertices_first() {
        let edgeless = ColoredGraph::uniform(2, vec![]).unwrap();
        let inst = domset_to_kdiscrete(&edgeless, 2, 1, DomsetVariant::Uncolored).unwrap();
        assert_eq!((inst.kept.clone(), inst.removed.clone()), (vec![], vec![0, 1]));
        assert_eq!((inst.graph.n(), inst.k_out), (4, 2));
        let (brute, reduced) = answers(&edgeless, 2, 1, DomsetVariant::Uncolored);
        assert!(brute && reduced);

        let edge_plus_isolated = ColoredGraph::uniform(3, vec![(0, 1)]).unwrap();
        for k in 1..=2 {
            let inst =
                domset_to_kdiscrete(&edge_plus_isolated, k, 1, DomsetVariant::Uncolored).unwrap();
            assert_eq!((inst.kept.clone(), inst.removed.clone()), (vec![0, 1], vec![2]));
            assert_eq!(inst.k_out, k + 1);
            let (brute, reduced) = answers(&edge_plus_isolated, k, 1, DomsetVariant::Uncolored);
            assert_eq!(brute, reduced, "k={k}");
            assert_eq!(brute, k == 2);
        }
    }

    #[test]
    fn generator_rejects_unusable_parameters() {
        let edgeless = ColoredGraph::uniform(2, vec![]).unwrap();
        assert!(matches!(
            domset_to_kdiscrete(&edgeless, 1, 1, DomsetVariant::Uncolored),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            domset_to_kdiscrete(&path(3), 4, 1, DomsetVariant::Colored),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            domset_to_kdiscrete(&path(3), 1, 0, DomsetVariant::Colored),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn degree_coding_survives_every_small_size() {
        for n in 2..=6 {
            for l in 1..=2 {
                let inst = domset_to_kdiscrete(&path(n), 1, l, DomsetVariant::Uncolored)
                    .unwrap_or_else(|e| panic!("n={n} l={l}: {e}"));
                assert_eq!(inst.graph.n(), 2 * l * n + n * n + 4);
                assert!(inst.graph.is_uniformly_colored());
            }
        }
    }
}
