//! Exact classification and minimum individualization for 3-bounded graphs.
//!
//! A colored graph is 3-bounded when every cell of its stable coloring has
//! at most three vertices. Normalization recolors by stable cells and
//! complements every class or class pair carrying more than half of its
//! possible edges; what survives is a graph whose only edges are perfect
//! matchings between equal-size classes. Each linked component is then
//! governed by the holonomy of its matchings (a subgroup of the symmetric
//! group on three points), whose centralizer is the component's automorphism
//! group, and membership and minimum individualization counts follow from a
//! small case table over that order.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::classes::{membership, ClassTag, SolveReport};
use crate::graph::ColoredGraph;
use crate::refine::{individualize, stable_coloring};
use crate::{Error, Result};

/// One edge-rewriting step applied during normalization. Replaying the steps
/// on the normalized graph (each complement is an involution) recovers the
/// stable recoloring of the input graph, so witnesses transfer unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizeStep {
    /// Edges inside the class were complemented.
    ComplementWithin(usize),
    /// Edges between the two classes were complemented.
    ComplementBetween(usize, usize),
}

/// A 3-bounded graph rewritten into matching-linked normal form. Vertex ids
/// are unchanged from the input graph.
#[derive(Clone, Debug)]
pub struct Normalized {
    /// The rewritten graph: colors are stable cells and every remaining
    /// edge belongs to a perfect matching between two equal-size classes.
    pub graph: ColoredGraph,
    /// Color classes of the normalized graph, indexed by color, ascending.
    pub classes: Vec<Vec<usize>>,
    /// Class pairs (i, j) with i < j that remain linked by a matching.
    pub links: Vec<(usize, usize)>,
    /// Linked components as ascending class-id lists, sorted by first class.
    pub components: Vec<Vec<usize>>,
    /// Complementation steps applied, in application order.
    pub transcript: Vec<NormalizeStep>,
}

/// Structure of one linked component of a normalized graph.
#[derive(Clone, Debug)]
pub struct ComponentInfo {
    /// Class ids in the component, ascending.
    pub class_ids: Vec<usize>,
    /// Common size of the component's classes (1, 2, or 3).
    pub class_size: usize,
    /// Vertices of the component, ascending.
    pub vertices: Vec<usize>,
    /// Whether the component's edges contain no cycle.
    pub is_forest: bool,
    /// Order of the component's automorphism group: always 2 for size-2
    /// classes, and the centralizer order of the holonomy group (6, 3, 2,
    /// or 1) for size-3 classes.
    pub aut_order: usize,
    /// For automorphism order exactly 2 on size-3 classes: the lowest
    /// vertex moved by the surviving automorphism.
    pub moved_min: Option<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the two sets; false when they were already joined.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[ry] = rx;
        true
    }
}

/// Refines to the stable coloring and complements every dense class and
/// class pair, leaving only perfect matchings between equal-size classes.
///
/// # Errors
/// Returns an error if some stable cell has more than three vertices.
pub fn normalize_3bounded(g: &ColoredGraph) -> Result<Normalized> {
    let trace = stable_coloring(g);
    let stable = trace.stable();
    for cell in stable.cells() {
        if cell.len() > 3 {
            return Err(Error::NotThreeBounded { size: cell.len() });
        }
    }
    let recolored = stable.recolor(g);
    let classes = recolored.color_classes();
    let nc = classes.len();

    let mut within = vec![0usize; nc];
    let mut between: HashMap<(usize, usize), usize> = HashMap::new();
    for &(u, v) in recolored.edges() {
        let (cu, cv) = (recolored.color(u), recolored.color(v));
        if cu == cv {
            within[cu] += 1;
        } else {
            *between.entry((cu.min(cv), cu.max(cv))).or_insert(0) += 1;
        }
    }

    let mut transcript = Vec::new();
    let mut flip_within = vec![false; nc];
    for c in 0..nc {
        let s = classes[c].len();
        if 4 * within[c] > s * (s - 1) {
            flip_within[c] = true;
            transcript.push(NormalizeStep::ComplementWithin(c));
        }
    }
    let mut pairs: Vec<(usize, usize)> = between.keys().copied().collect();
    pairs.sort_unstable();
    let mut flip_between: HashSet<(usize, usize)> = HashSet::new();
    for (i, j) in pairs {
        if 2 * between[&(i, j)] > classes[i].len() * classes[j].len() {
            flip_between.insert((i, j));
            transcript.push(NormalizeStep::ComplementBetween(i, j));
        }
    }

    let flipped = |u: usize, v: usize| {
        let (cu, cv) = (recolored.color(u), recolored.color(v));
        if cu == cv {
            flip_within[cu]
        } else {
            flip_between.contains(&(cu.min(cv), cu.max(cv)))
        }
    };
    let mut edges: Vec<(usize, usize)> =
        recolored.edges().iter().copied().filter(|&(u, v)| !flipped(u, v)).collect();
    for c in 0..nc {
        if !flip_within[c] {
            continue;
        }
        for (a, &u) in classes[c].iter().enumerate() {
            for &v in &classes[c][a + 1..] {
                if !recolored.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
    }
    for &(i, j) in &flip_between {
        for &u in &classes[i] {
            for &v in &classes[j] {
                if !recolored.has_edge(u, v) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    let graph = ColoredGraph::new(g.n(), edges, recolored.colors().to_vec())?;

    // Stability forces every class and biregular class pair to be empty or
    // complete below the density threshold, so only matchings can survive.
    for &(u, v) in graph.edges() {
        assert_ne!(graph.color(u), graph.color(v), "normalization empties every class");
    }
    let mut linked: HashSet<(usize, usize)> = HashSet::new();
    for &(u, v) in graph.edges() {
        let (cu, cv) = (graph.color(u), graph.color(v));
        linked.insert((cu.min(cv), cu.max(cv)));
    }
    let mut links: Vec<(usize, usize)> = linked.into_iter().collect();
    links.sort_unstable();
    for &(i, j) in &links {
        assert_eq!(classes[i].len(), classes[j].len(), "linked classes have equal size");
        for &u in classes[i].iter().chain(classes[j].iter()) {
            let other = if graph.color(u) == i { j } else { i };
            let d = graph.neighbors(u).iter().filter(|&&v| graph.color(v) == other).count();
            assert_eq!(d, 1, "surviving links are perfect matchings");
        }
    }

    let mut uf = UnionFind::new(nc);
    for &(i, j) in &links {
        uf.union(i, j);
    }
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..nc {
        by_root.entry(uf.find(c)).or_default().push(c);
    }
    let mut components: Vec<Vec<usize>> = by_root.into_values().collect();
    components.sort_by_key(|comp| comp[0]);

    Ok(Normalized { graph, classes, links, components, transcript })
}

/// A permutation of the three positions within a class.
type Perm3 = [usize; 3];

const IDENTITY3: Perm3 = [0, 1, 2];
const ALL_PERMS3: [Perm3; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Applies `a` first, then `b`.
fn compose3(a: Perm3, b: Perm3) -> Perm3 {
    [b[a[0]], b[a[1]], b[a[2]]]
}

fn invert3(a: Perm3) -> Perm3 {
    let mut r = [0; 3];
    for p in 0..3 {
        r[a[p]] = p;
    }
    r
}

/// Closure of the generated subgroup of Sym(3).
fn close_perm3(gens: &[Perm3]) -> Vec<Perm3> {
    let mut set = vec![IDENTITY3];
    let mut i = 0;
    while i < set.len() {
        let a = set[i];
        for &g in gens {
            let b = compose3(a, g);
            if !set.contains(&b) {
                set.push(b);
            }
        }
        i += 1;
    }
    set
}

/// The matching between two linked classes as a position permutation:
/// position `p` of class `i` is matched to position `m[p]` of class `j`.
fn matching_perm(norm: &Normalized, i: usize, j: usize) -> Perm3 {
    let mut m = [usize::MAX; 3];
    for (p, &u) in norm.classes[i].iter().enumerate() {
        let mut hits =
            norm.graph.neighbors(u).iter().filter(|&&v| norm.graph.color(v) == j);
        let v = *hits.next().expect("linked classes are perfectly matched");
        assert!(hits.next().is_none(), "linked classes are perfectly matched");
        m[p] = norm.classes[j].binary_search(&v).expect("neighbor lies in its class");
    }
    m
}

/// Analyzes one linked component: forest check, and for size-3 classes the
/// holonomy of the matchings along a spanning tree, whose centralizer order
/// is the component's automorphism group order.
pub fn component_info(norm: &Normalized, comp: &[usize]) -> ComponentInfo {
    let class_ids = comp.to_vec();
    let class_size = norm.classes[comp[0]].len();
    for &c in comp {
        assert_eq!(norm.classes[c].len(), class_size, "linked classes have equal size");
    }
    let mut vertices: Vec<usize> =
        comp.iter().flat_map(|&c| norm.classes[c].iter().copied()).collect();
    vertices.sort_unstable();

    let index: HashMap<usize, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(vertices.len());
    let mut is_forest = true;
    for &(u, v) in norm.graph.edges() {
        if let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) {
            if !uf.union(a, b) {
                is_forest = false;
            }
        }
    }

    if class_size <= 1 {
        return ComponentInfo {
            class_ids,
            class_size,
            vertices,
            is_forest,
            aut_order: 1,
            moved_min: None,
        };
    }
    if class_size == 2 {
        // The only candidate automorphism swaps both vertices of every
        // class; matchings transport it consistently because Sym(2) is
        // abelian, so the component's group is always {id, flip}.
        let moved = vertices[0];
        return ComponentInfo {
            class_ids,
            class_size,
            vertices,
            is_forest,
            aut_order: 2,
            moved_min: Some(moved),
        };
    }

    let in_comp: HashSet<usize> = comp.iter().copied().collect();
    let mut neighbors: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(i, j) in &norm.links {
        if in_comp.contains(&i) && in_comp.contains(&j) {
            neighbors.entry(i).or_default().push(j);
            neighbors.entry(j).or_default().push(i);
        }
    }
    let mut transport: HashMap<usize, Perm3> = HashMap::new();
    transport.insert(comp[0], IDENTITY3);
    let mut holonomies: Vec<Perm3> = Vec::new();
    let mut queue = VecDeque::from([comp[0]]);
    while let Some(i) = queue.pop_front() {
        let ti = transport[&i];
        for &j in neighbors.get(&i).map(Vec::as_slice).unwrap_or(&[]) {
            let m = matching_perm(norm, i, j);
            match transport.get(&j) {
                None => {
                    transport.insert(j, compose3(ti, m));
                    queue.push_back(j);
                }
                Some(&tj) => holonomies.push(compose3(compose3(ti, m), invert3(tj))),
            }
        }
    }
    let hol = close_perm3(&holonomies);
    let centralizer: Vec<Perm3> = ALL_PERMS3
        .iter()
        .copied()
        .filter(|c| hol.iter().all(|&h| compose3(*c, h) == compose3(h, *c)))
        .collect();
    let aut_order = centralizer.len();
    assert!(
        matches!(aut_order, 1 | 2 | 3 | 6),
        "centralizer order in Sym(3) is 1, 2, 3, or 6"
    );
    let moved_min = (aut_order == 2).then(|| {
        let c = centralizer.into_iter().find(|&p| p != IDENTITY3).expect("nontrivial element");
        let mut best = usize::MAX;
        for &i in comp {
            let ti = transport[&i];
            let sigma = compose3(compose3(invert3(ti), c), ti);
            for p in 0..3 {
                if sigma[p] != p {
                    best = best.min(norm.classes[i][p]);
                }
            }
        }
        best
    });
    ComponentInfo { class_ids, class_size, vertices, is_forest, aut_order, moved_min }
}

/// Minimum individualization count and a witness for one component.
///
/// Individualizing a vertex splits its class, and the split propagates as
/// singletons along the matchings; a second singleton reaches a class
/// exactly when some closed walk's holonomy moves the first one's position,
/// which is what the case table below encodes.
fn component_minimum(
    norm: &Normalized,
    info: &ComponentInfo,
    tag: ClassTag,
) -> (usize, Vec<usize>) {
    if info.class_size <= 1 {
        return (0, Vec::new());
    }
    let lowest = info.vertices[0];
    if info.class_size == 2 {
        return match tag {
            ClassTag::Discrete | ClassTag::Rigid => (1, vec![lowest]),
            ClassTag::Amenable if info.is_forest => (0, Vec::new()),
            ClassTag::Amenable => (1, vec![lowest]),
            ClassTag::Compact | ClassTag::Refinable => (0, Vec::new()),
            ClassTag::DiscreteWithin(_) => unreachable!("rejected before dispatch"),
        };
    }
    let first_class = &norm.classes[info.class_ids[0]];
    let two_lowest = vec![first_class[0], first_class[1]];
    match info.aut_order {
        6 => match tag {
            ClassTag::Discrete | ClassTag::Rigid => (2, two_lowest),
            ClassTag::Amenable if info.is_forest => (0, Vec::new()),
            ClassTag::Amenable => (2, two_lowest),
            ClassTag::Compact | ClassTag::Refinable => (0, Vec::new()),
            ClassTag::DiscreteWithin(_) => unreachable!("rejected before dispatch"),
        },
        3 => match tag {
            ClassTag::Discrete | ClassTag::Rigid | ClassTag::Amenable => (1, vec![lowest]),
            ClassTag::Compact | ClassTag::Refinable => (0, Vec::new()),
            ClassTag::DiscreteWithin(_) => unreachable!("rejected before dispatch"),
        },
        2 => (1, vec![info.moved_min.expect("order-two component records its moved vertex")]),
        1 => match tag {
            ClassTag::Rigid => (0, Vec::new()),
            _ => (1, vec![lowest]),
        },
        _ => unreachable!("centralizer order in Sym(3) is 1, 2, 3, or 6"),
    }
}

/// Whether refinement alone suffices for the graph: every linked component
/// of the normalized graph is a forest.
///
/// # Errors
/// Returns an error if the graph is not 3-bounded.
pub fn is_amenable_3bounded(graph: &ColoredGraph) -> Result<bool> {
    let norm = normalize_3bounded(graph)?;
    Ok(norm.components.iter().all(|comp| component_info(&norm, comp).is_forest))
}

/// Whether every linked component is compact: size-2 classes always are,
/// size-3 classes exactly when the component automorphism order is 6 or 3.
///
/// # Errors
/// Returns an error if the graph is not 3-bounded.
pub fn is_compact_3bounded(graph: &ColoredGraph) -> Result<bool> {
    let norm = normalize_3bounded(graph)?;
    Ok(norm.components.iter().all(|comp| {
        let info = component_info(&norm, comp);
        info.class_size <= 2 || info.aut_order == 6 || info.aut_order == 3
    }))
}

/// Minimum-size individualization set putting a 3-bounded graph into the
/// class named by `tag`, as the sum of per-component minima. The witness is
/// replayed through the membership test before returning.
///
/// # Errors
/// Returns an error if the graph is not 3-bounded, or for the
/// bounded-round discreteness tag, which has no per-component minimum rule.
pub fn solve_3bounded(graph: &ColoredGraph, tag: ClassTag) -> Result<SolveReport> {
    if matches!(tag, ClassTag::DiscreteWithin(_)) {
        return Err(Error::InvalidInput(
            "bounded-round discreteness has no component minimum rule".into(),
        ));
    }
    let norm = normalize_3bounded(graph)?;
    let mut witness: Vec<usize> = Vec::new();
    let mut work = 0u64;
    for comp in &norm.components {
        let info = component_info(&norm, comp);
        let (count, mut w) = component_minimum(&norm, &info, tag);
        assert_eq!(count, w.len(), "witness size equals the component minimum");
        witness.append(&mut w);
        work += 1;
    }
    witness.sort_unstable();
    let replayed = individualize(graph, &witness)?;
    assert!(
        membership(&replayed, tag)?,
        "minimum individualization set fails membership on replay"
    );
    Ok(SolveReport { answer: true, witness: Some(witness), work })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::refine;
    use proptest::prelude::*;

    /// Two size-2 classes joined by a single matching.
    fn pair_chain() -> ColoredGraph {
        ColoredGraph::new(4, vec![(0, 2), (1, 3)], vec![0, 0, 1, 1]).unwrap()
    }

    /// Three size-2 classes matched in a class triangle (two vertex cycles).
    fn pair_cycle() -> ColoredGraph {
        ColoredGraph::new(
            6,
            vec![(0, 2), (1, 3), (2, 4), (3, 5), (0, 4), (1, 5)],
            vec![0, 0, 1, 1, 2, 2],
        )
        .unwrap()
    }

    /// Two size-3 classes joined by a straight matching (order 6).
    fn triple_pair() -> ColoredGraph {
        ColoredGraph::new(6, vec![(0, 3), (1, 4), (2, 5)], vec![0, 0, 0, 1, 1, 1]).unwrap()
    }

    /// Three size-3 classes in a class triangle, all matchings straight:
    /// trivial holonomy (order 6) but three vertex cycles.
    fn triple_triangle_identity() -> ColoredGraph {
        ColoredGraph::new(
            9,
            vec![
                (0, 3), (1, 4), (2, 5),
                (3, 6), (4, 7), (5, 8),
                (0, 6), (1, 7), (2, 8),
            ],
            vec![0, 0, 0, 1, 1, 1, 2, 2, 2],
        )
        .unwrap()
    }

    /// Class triangle whose closing matching rotates positions: holonomy is
    /// a 3-cycle (order 3) and the vertex graph is a 9-cycle.
    fn triple_cycle_rotation() -> ColoredGraph {
        ColoredGraph::new(
            9,
            vec![
                (0, 3), (1, 4), (2, 5),
                (3, 6), (4, 7), (5, 8),
                (1, 6), (2, 7), (0, 8),
            ],
            vec![0, 0, 0, 1, 1, 1, 2, 2, 2],
        )
        .unwrap()
    }

    /// Class triangle whose closing matching swaps two positions: holonomy
    /// is a transposition (order 2).
    fn triple_cycle_swap() -> ColoredGraph {
        ColoredGraph::new(
            9,
            vec![
                (0, 3), (1, 4), (2, 5),
                (3, 6), (4, 7), (5, 8),
                (1, 6), (0, 7), (2, 8),
            ],
            vec![0, 0, 0, 1, 1, 1, 2, 2, 2],
        )
        .unwrap()
    }

    /// Two class cycles whose holonomies (a transposition and a rotation)
    /// generate all of Sym(3): trivial automorphism group.
    fn triple_rigid() -> ColoredGraph {
        ColoredGraph::new(
            12,
            vec![
                (0, 3), (1, 4), (2, 5),
                (3, 6), (4, 7), (5, 8),
                (1, 6), (0, 7), (2, 8),
                (0, 9), (1, 10), (2, 11),
                (9, 4), (10, 5), (11, 3),
            ],
            vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3],
        )
        .unwrap()
    }

    /// Two size-3 classes with six edges (the complement of a matching).
    fn dense_triple_pair() -> ColoredGraph {
        ColoredGraph::new(
            6,
            vec![(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4)],
            vec![0, 0, 0, 1, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn normalization_complements_dense_pairs() {
        let norm = normalize_3bounded(&dense_triple_pair()).unwrap();
        assert_eq!(norm.graph.edges(), &[(0, 3), (1, 4), (2, 5)]);
        assert_eq!(norm.transcript, vec![NormalizeStep::ComplementBetween(0, 1)]);
        assert_eq!(norm.links, vec![(0, 1)]);
        // Complementing again recovers the stable recoloring of the input.
        let back = norm.graph.bipartite_complement(0, 1).unwrap();
        assert_eq!(back.edges(), dense_triple_pair().edges());
    }

    #[test]
    fn normalization_empties_complete_classes() {
        let triangle = ColoredGraph::uniform(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let norm = normalize_3bounded(&triangle).unwrap();
        assert_eq!(norm.graph.num_edges(), 0);
        assert_eq!(norm.transcript, vec![NormalizeStep::ComplementWithin(0)]);
    }

    #[test]
    fn normalization_rejects_wide_classes() {
        let c4 = ColoredGraph::uniform(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(matches!(
            normalize_3bounded(&c4),
            Err(Error::NotThreeBounded { size: 4 })
        ));
    }

    #[test]
    fn component_orders_follow_holonomy() {
        for (g, order) in [
            (triple_pair(), 6),
            (triple_triangle_identity(), 6),
            (triple_cycle_rotation(), 3),
            (triple_cycle_swap(), 2),
            (triple_rigid(), 1),
        ] {
            let norm = normalize_3bounded(&g).unwrap();
            assert_eq!(norm.components.len(), 1);
            let info = component_info(&norm, &norm.components[0]);
            assert_eq!(info.aut_order, order);
            assert_eq!(info.aut_order, oracle::brute_automorphisms(&g).len());
        }
    }

    #[test]
    fn amenable_examples() {
        assert!(is_amenable_3bounded(&pair_chain()).unwrap());
        assert!(!is_amenable_3bounded(&pair_cycle()).unwrap());
        assert!(is_amenable_3bounded(&ColoredGraph::uniform(3, vec![]).unwrap()).unwrap());
        // A dense class pair is amenable because normalization removes it.
        let k22 =
            ColoredGraph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)], vec![0, 0, 1, 1]).unwrap();
        assert!(is_amenable_3bounded(&k22).unwrap());
        assert!(is_amenable_3bounded(&triple_pair()).unwrap());
        assert!(!is_amenable_3bounded(&triple_triangle_identity()).unwrap());
    }

    #[test]
    fn compact_examples() {
        assert!(is_compact_3bounded(&triple_pair()).unwrap());
        assert!(is_compact_3bounded(&triple_triangle_identity()).unwrap());
        assert!(is_compact_3bounded(&triple_cycle_rotation()).unwrap());
        assert!(!is_compact_3bounded(&triple_cycle_swap()).unwrap());
        assert!(!is_compact_3bounded(&triple_rigid()).unwrap());
        assert!(is_compact_3bounded(&pair_cycle()).unwrap());
    }

    #[test]
    fn solve_minima_for_order_six() {
        let g = triple_triangle_identity();
        let discrete = solve_3bounded(&g, ClassTag::Discrete).unwrap();
        assert_eq!(discrete.witness, Some(vec![0, 1]));
        let rigid = solve_3bounded(&g, ClassTag::Rigid).unwrap();
        assert_eq!(rigid.witness, Some(vec![0, 1]));
        let amenable = solve_3bounded(&g, ClassTag::Amenable).unwrap();
        assert_eq!(amenable.witness, Some(vec![0, 1]));
        assert_eq!(solve_3bounded(&g, ClassTag::Compact).unwrap().witness, Some(vec![]));
        assert_eq!(solve_3bounded(&g, ClassTag::Refinable).unwrap().witness, Some(vec![]));

        let forest = triple_pair();
        assert_eq!(solve_3bounded(&forest, ClassTag::Amenable).unwrap().witness, Some(vec![]));
        assert_eq!(
            solve_3bounded(&forest, ClassTag::Discrete).unwrap().witness,
            Some(vec![0, 1])
        );
    }

    #[test]
    fn solve_minima_for_lower_orders() {
        let rotation = triple_cycle_rotation();
        for tag in [ClassTag::Discrete, ClassTag::Rigid, ClassTag::Amenable] {
            assert_eq!(solve_3bounded(&rotation, tag).unwrap().witness, Some(vec![0]));
        }
        assert_eq!(solve_3bounded(&rotation, ClassTag::Compact).unwrap().witness, Some(vec![]));

        let swap = triple_cycle_swap();
        for tag in [
            ClassTag::Discrete,
            ClassTag::Rigid,
            ClassTag::Amenable,
            ClassTag::Compact,
            ClassTag::Refinable,
        ] {
            assert_eq!(solve_3bounded(&swap, tag).unwrap().witness, Some(vec![0]));
        }

        let rigid = triple_rigid();
        assert_eq!(solve_3bounded(&rigid, ClassTag::Rigid).unwrap().witness, Some(vec![]));
        assert_eq!(solve_3bounded(&rigid, ClassTag::Discrete).unwrap().witness, Some(vec![0]));

        assert_eq!(solve_3bounded(&pair_chain(), ClassTag::Discrete).unwrap().witness, Some(vec![0]));
        assert_eq!(solve_3bounded(&pair_chain(), ClassTag::Amenable).unwrap().witness, Some(vec![]));
        assert_eq!(solve_3bounded(&pair_cycle(), ClassTag::Amenable).unwrap().witness, Some(vec![0]));
    }

    #[test]
    fn solve_rejects_bounded_round_tag() {
        assert!(solve_3bounded(&pair_chain(), ClassTag::DiscreteWithin(2)).is_err());
    }

    fn three_bounded_graph(max_n: usize) -> impl Strategy<Value = ColoredGraph> {
        (3..=max_n)
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
                let colors: Vec<usize> = (0..n).map(|v| v / 3).collect();
                ColoredGraph::new(n, edges, colors).unwrap()
            })
    }

    /// Smallest subset size whose individualization passes an independent
    /// membership check, with naive refinement and brute-force groups.
    fn brute_minimum(g: &ColoredGraph, tag: ClassTag) -> usize {
        for m in 0..=g.n() {
            for s in crate::combin::Subsets::new(g.n(), m) {
                let ind = refine::individualize(g, &s).unwrap();
                let ok = match tag {
                    ClassTag::Discrete => {
                        oracle::labels_discrete(&oracle::naive_stable(&ind, ind.colors()))
                    }
                    ClassTag::Rigid => oracle::brute_automorphisms(&ind).len() == 1,
                    ClassTag::Refinable => {
                        let stable = oracle::naive_stable(&ind, ind.colors());
                        let auts = oracle::brute_automorphisms(&ind);
                        let mut labels = vec![usize::MAX; ind.n()];
                        let mut next = 0;
                        for v in 0..ind.n() {
                            if labels[v] != usize::MAX {
                                continue;
                            }
                            for a in &auts {
                                labels[a.apply(v)] = next;
                            }
                            next += 1;
                        }
                        oracle::same_partition(&stable, &labels)
                    }
                    _ => unreachable!("only brute-checkable tags"),
                };
                if ok {
                    return m;
                }
            }
        }
        g.n()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn solve_matches_brute_minimum(g in three_bounded_graph(6)) {
            for tag in [ClassTag::Discrete, ClassTag::Rigid, ClassTag::Refinable] {
                let report = solve_3bounded(&g, tag).unwrap();
                let witness = report.witness.expect("solve always finds a set");
                prop_assert_eq!(witness.len(), brute_minimum(&g, tag));
            }
        }

        #[test]
        fn membership_hierarchy_is_monotone(g in three_bounded_graph(9)) {
            let discrete = membership(&g, ClassTag::Discrete).unwrap();
            let amenable = membership(&g, ClassTag::Amenable).unwrap();
            let compact = membership(&g, ClassTag::Compact).unwrap();
            let refinable = membership(&g, ClassTag::Refinable).unwrap();
            prop_assert!(!discrete || amenable);
            prop_assert!(!amenable || compact);
            prop_assert!(!compact || refinable);
        }
    }
}
