//! Pair-class graph builder with the coupling and implication gadgets.
//!
//! Graphs built here consist of 2-vertex color classes (pairs) wired by two
//! primitives: straight perfect matchings between pairs, and the
//! four-inner-vertex coupling gadget whose inner vertices form a private
//! 4-vertex color class. The implication gadget is sugar over both. Because
//! every edge is one of these two shapes and inner classes touch nothing
//! outside their own gadget, both color refinement and the automorphism
//! group of a built graph admit exact combinatorial descriptions:
//!
//! * Refinement distinguishes a pair (gives its two vertices different
//!   colors) exactly as computed by [`SplitAnalysis::closure`]: matched
//!   pairs split together, and a coupling gadget with two split pairs
//!   splits the third.
//! * Automorphisms are exactly the solutions of a linear system over F2
//!   with one flip variable per pair: a matching forces equal flips, a
//!   coupling gadget forces its three flips to sum to zero, and inner
//!   vertices follow the flips of the gadget's first two pairs.
//!
//! Tests cross-check both descriptions against the refiner and the
//! brute-force automorphism oracle on small compositions.

use crate::graph::ColoredGraph;
use crate::{Error, Result};

/// Coupling gadget over three pairs with its four inner vertices.
///
/// Inner vertex `inner[2b + c]` is adjacent to side `b` of `left`, side `c`
/// of `right`, and side `b XOR c` of `target`.
#[derive(Clone, Copy, Debug)]
pub struct Cfi {
    /// Pair id of the first coupled pair.
    pub left: usize,
    /// Pair id of the second coupled pair.
    pub right: usize,
    /// Pair id whose split is forced by the other two.
    pub target: usize,
    /// Vertex ids of the inner class, indexed by `2b + c`.
    pub inner: [usize; 4],
}

/// Which color class a vertex belongs to, at gadget granularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    /// Member of the pair with this id.
    Pair(usize),
    /// Inner vertex of the coupling gadget with this id.
    Inner(usize),
}

/// Builder for graphs made of vertex pairs, matchings and coupling gadgets.
///
/// Every pair and every inner class gets its own color, allocated in
/// construction order.
#[derive(Clone, Debug, Default)]
pub struct PairGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    colors: Vec<usize>,
    pairs: Vec<[usize; 2]>,
    cfis: Vec<Cfi>,
    matchings: Vec<(usize, usize)>,
    unit_of: Vec<Unit>,
}

impl PairGraph {
    /// Empty builder.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a fresh pair as its own color class and returns its id.
    pub fn add_pair(&mut self) -> usize {
        let id = self.pairs.len();
        let color = self.num_color_classes();
        let v0 = self.push_vertex(color, Unit::Pair(id));
        let v1 = self.push_vertex(color, Unit::Pair(id));
        self.pairs.push([v0, v1]);
        id
    }

    /// Connects two pairs by a straight perfect matching (side to side).
    pub fn add_matching(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_distinct(&[a, b])?;
        let (pa, pb) = (self.pairs[a], self.pairs[b]);
        self.edges.push((pa[0], pb[0]));
        self.edges.push((pa[1], pb[1]));
        self.matchings.push((a, b));
        Ok(())
    }

    /// Adds a coupling gadget over three existing pairs and returns its id.
    pub fn add_cfi(&mut self, left: usize, right: usize, target: usize) -> Result<usize> {
        self.check_distinct(&[left, right, target])?;
        let id = self.cfis.len();
        let color = self.num_color_classes();
        let mut inner = [0usize; 4];
        for slot in inner.iter_mut() {
            *slot = self.push_vertex(color, Unit::Inner(id));
        }
        for b in 0..2 {
            for c in 0..2 {
                let f = inner[2 * b + c];
                self.edges.push((f, self.pairs[left][b]));
                self.edges.push((f, self.pairs[right][c]));
                self.edges.push((f, self.pairs[target][b ^ c]));
            }
        }
        self.cfis.push(Cfi { left, right, target, inner });
        Ok(id)
    }

    /// Adds an implication gadget from `source` to `target`: two fresh
    /// pairs matched to `source`, coupled onto `target`. Returns the fresh
    /// pair ids.
    pub fn add_imp(&mut self, source: usize, target: usize) -> Result<[usize; 2]> {
        self.check_distinct(&[source, target])?;
        let f1 = self.add_pair();
        let f2 = self.add_pair();
        self.add_matching(source, f1)?;
        self.add_matching(source, f2)?;
        self.add_cfi(f1, f2, target)?;
        Ok([f1, f2])
    }

    /// The built colored graph.
    pub fn build_graph(&self) -> ColoredGraph {
        ColoredGraph::new(self.num_vertices, self.edges.clone(), self.colors.clone())
            .expect("builder only produces valid graphs")
    }

    /// Number of vertices allocated so far.
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of pairs allocated so far.
    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Vertex ids of a pair, side 0 then side 1.
    pub fn pair_vertices(&self, pair: usize) -> [usize; 2] {
        self.pairs[pair]
    }

    /// All coupling gadget records.
    pub fn cfis(&self) -> &[Cfi] {
        &self.cfis
    }

    /// All matchings, as pair id pairs.
    pub fn matchings(&self) -> &[(usize, usize)] {
        &self.matchings
    }

    /// The class unit a vertex belongs to.
    pub fn unit_of(&self, v: usize) -> Unit {
        self.unit_of[v]
    }

    fn num_color_classes(&self) -> usize {
        self.pairs.len() + self.cfis.len()
    }

    fn push_vertex(&mut self, color: usize, unit: Unit) -> usize {
        let v = self.num_vertices;
        self.num_vertices += 1;
        self.colors.push(color);
        self.unit_of.push(unit);
        v
    }

    fn check_distinct(&self, ids: &[usize]) -> Result<()> {
        for (i, &a) in ids.iter().enumerate() {
            if a >= self.pairs.len() {
                return Err(Error::IndexOutOfRange { index: a, size: self.pairs.len() });
            }
            if ids[..i].contains(&a) {
                return Err(Error::InvalidInput(format!("pair {a} reused inside one gadget")));
            }
        }
        Ok(())
    }
}

/// How refinement partitions a 4-vertex inner class, indexed by `2b + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum InnerCells {
    Whole,
    SameB,
    SameC,
    SameXor,
    Discrete,
}

/// Inner-class partition forced by the split state of the three pairs.
fn inner_cells(split: &[bool], cfi: (usize, usize, usize)) -> InnerCells {
    let (i, j, k) = cfi;
    match (split[i], split[j], split[k]) {
        (false, false, false) => InnerCells::Whole,
        (true, false, false) => InnerCells::SameB,
        (false, true, false) => InnerCells::SameC,
        (false, false, true) => InnerCells::SameXor,
        _ => InnerCells::Discrete,
    }
}

/// Cell label of inner vertex `2b + c` under a partition, offset-free.
fn inner_label(cells: InnerCells, bc: usize) -> usize {
    let (b, c) = (bc >> 1, bc & 1);
    match cells {
        InnerCells::Whole => 0,
        InnerCells::SameB => b,
        InnerCells::SameC => c,
        InnerCells::SameXor => b ^ c,
        InnerCells::Discrete => bc,
    }
}

/// Precomputed rule incidence for the split closure of one built graph.
#[derive(Clone, Debug)]
pub struct SplitAnalysis {
    num_pairs: usize,
    num_matchings: usize,
    matchings: Vec<(usize, usize)>,
    cfis: Vec<(usize, usize, usize)>,
    incident: Vec<Vec<u32>>,
}

impl SplitAnalysis {
    /// Indexes the builder's matchings and gadgets by the pairs they touch.
    pub fn new(pg: &PairGraph) -> Self {
        let num_pairs = pg.num_pairs();
        let matchings = pg.matchings().to_vec();
        let cfis: Vec<(usize, usize, usize)> =
            pg.cfis().iter().map(|c| (c.left, c.right, c.target)).collect();
        let mut incident = vec![Vec::new(); num_pairs];
        for (r, &(a, b)) in matchings.iter().enumerate() {
            incident[a].push(r as u32);
            incident[b].push(r as u32);
        }
        for (r, &(i, j, k)) in cfis.iter().enumerate() {
            let rule = (matchings.len() + r) as u32;
            incident[i].push(rule);
            incident[j].push(rule);
            incident[k].push(rule);
        }
        SplitAnalysis {
            num_pairs,
            num_matchings: matchings.len(),
            matchings,
            cfis,
            incident,
        }
    }

    /// Number of pairs tracked.
    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    /// Exactly which pairs refinement distinguishes after individualizing
    /// any vertex set touching the seed units.
    pub fn closure(&self, seeds: &[Unit]) -> Vec<bool> {
        let mut split = vec![false; self.num_pairs];
        let mut queue: Vec<usize> = Vec::new();
        for seed in seeds {
            match *seed {
                Unit::Pair(p) => mark(p, &mut split, &mut queue),
                Unit::Inner(g) => {
                    let (i, j, k) = self.cfis[g];
                    mark(i, &mut split, &mut queue);
                    mark(j, &mut split, &mut queue);
                    mark(k, &mut split, &mut queue);
                }
            }
        }
        while let Some(p) = queue.pop() {
            for &rule in &self.incident[p] {
                let rule = rule as usize;
                if rule < self.num_matchings {
                    let (a, b) = self.matchings[rule];
                    mark(a, &mut split, &mut queue);
                    mark(b, &mut split, &mut queue);
                } else {
                    let (i, j, k) = self.cfis[rule - self.num_matchings];
                    let count =
                        usize::from(split[i]) + usize::from(split[j]) + usize::from(split[k]);
                    if count >= 2 {
                        mark(i, &mut split, &mut queue);
                        mark(j, &mut split, &mut queue);
                        mark(k, &mut split, &mut queue);
                    }
                }
            }
        }
        split
    }

    /// Whether individualizing a set with this closure leaves a graph whose
    /// stable cells equal the orbits of the stabilizer spanned by `w_basis`
    /// (flip vectors fixing the individualized vertices).
    pub fn refinable_under(&self, split: &[bool], w_basis: &[Vec<u64>]) -> bool {
        assert_eq!(split.len(), self.num_pairs);
        let mut support = vec![0u64; split.len().div_ceil(64)];
        for v in w_basis {
            for (s, w) in support.iter_mut().zip(v) {
                *s |= w;
            }
        }
        for (p, &s) in split.iter().enumerate() {
            let flippable = bit(&support, p);
            assert!(
                !(s && flippable),
                "a stabilizer flip moves a refinement-split pair; orbits must refine cells"
            );
            if !s && !flippable {
                return false;
            }
        }
        for &cfi in &self.cfis {
            let cells = inner_cells(split, cfi);
            let orbit_cells = match span_image(w_basis, cfi.0, cfi.1) {
                0b0001 => InnerCells::Discrete,
                0b1111 => InnerCells::Whole,
                0b0011 => InnerCells::SameB,
                0b0101 => InnerCells::SameC,
                0b1001 => InnerCells::SameXor,
                other => unreachable!("not a subgroup image: {other:#06b}"),
            };
            if cells != orbit_cells {
                return false;
            }
        }
        true
    }
}

fn mark(p: usize, split: &mut [bool], queue: &mut Vec<usize>) {
    if !split[p] {
        split[p] = true;
        queue.push(p);
    }
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

/// Subgroup of F2^2 spanned by the basis vectors' bits at two pair columns,
/// as a 4-bit membership mask over elements `2*left_bit + right_bit`.
fn span_image(basis: &[Vec<u64>], left: usize, right: usize) -> u8 {
    let mut mask: u8 = 0b0001;
    for v in basis {
        let e = (u8::from(bit(v, left)) << 1) | u8::from(bit(v, right));
        let mut next = mask;
        for x in 0..4 {
            if mask >> x & 1 == 1 {
                next |= 1 << (x ^ e);
            }
        }
        mask = next;
    }
    mask
}

/// Basis of the flip space: one variable per pair, one parity constraint
/// per gadget, one equality constraint per matching. Every built graph's
/// automorphism group is exactly this space acting by pair flips.
pub fn flip_basis(pg: &PairGraph) -> Vec<Vec<u64>> {
    let p = pg.num_pairs();
    let words = p.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &(a, b) in pg.matchings() {
        let mut row = vec![0u64; words];
        set_bit(&mut row, a);
        set_bit(&mut row, b);
        rows.push(row);
    }
    for c in pg.cfis() {
        let mut row = vec![0u64; words];
        set_bit(&mut row, c.left);
        set_bit(&mut row, c.right);
        set_bit(&mut row, c.target);
        rows.push(row);
    }

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..p {
        let Some(hit) = (r..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, hit);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, col) {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let mut basis = Vec::new();
    for free in 0..p {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; words];
        set_bit(&mut v, free);
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            if bit(&rows[row_idx], free) {
                set_bit(&mut v, pc);
            }
        }
        basis.push(v);
    }
    basis
}

/// Basis of the subspace vanishing at the given pair columns.
pub fn stabilized_basis(basis: &[Vec<u64>], pinned: &[usize]) -> Vec<Vec<u64>> {
    let mut vs: Vec<Vec<u64>> = basis.to_vec();
    for &q in pinned {
        let Some(hit) = vs.iter().position(|v| bit(v, q)) else {
            continue;
        };
        let pivot = vs.swap_remove(hit);
        for v in vs.iter_mut() {
            if bit(v, q) {
                for (x, y) in v.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
    }
    vs
}

/// Pair columns pinned to zero in the stabilizer of any vertex set
/// touching exactly these units.
pub fn pinned_columns(pg: &PairGraph, seeds: &[Unit]) -> Vec<usize> {
    let mut cols = Vec::new();
    for seed in seeds {
        match *seed {
            Unit::Pair(p) => cols.push(p),
            Unit::Inner(g) => {
                cols.push(pg.cfis()[g].left);
                cols.push(pg.cfis()[g].right);
            }
        }
    }
    cols.sort_unstable();
    cols.dedup();
    cols
}

fn unit_capacity(u: Unit) -> usize {
    match u {
        Unit::Pair(_) => 2,
        Unit::Inner(_) => 4,
    }
}

/// All class units of a built graph, pairs first.
pub fn units(pg: &PairGraph) -> Vec<Unit> {
    (0..pg.num_pairs())
        .map(Unit::Pair)
        .chain((0..pg.cfis().len()).map(Unit::Inner))
        .collect()
}

/// Expands a unit set into exactly `k` vertices touching those units and
/// nothing else. Requires the units' combined vertex count to reach `k`.
pub fn units_to_vertices(pg: &PairGraph, chosen: &[Unit], k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    for &u in chosen {
        match u {
            Unit::Pair(p) => out.push(pg.pair_vertices(p)[0]),
            Unit::Inner(g) => out.push(pg.cfis()[g].inner[0]),
        }
    }
    let mut extra = 1;
    while out.len() < k {
        let before = out.len();
        for &u in chosen {
            if out.len() == k {
                break;
            }
            match u {
                Unit::Pair(p) if extra < 2 => out.push(pg.pair_vertices(p)[extra]),
                Unit::Inner(g) if extra < 4 => out.push(pg.cfis()[g].inner[extra]),
                _ => {}
            }
        }
        assert!(out.len() > before, "units cannot absorb {k} vertices");
        extra += 1;
    }
    out
}

/// Sweeps every way of individualizing exactly `k` vertices, grouped by the
/// set of units touched, and returns the first unit set passing `test`.
///
/// The split closure and the stabilized flip space depend only on which
/// units an individualized set touches, so this enumeration is exhaustive
/// over all k-vertex subsets: a unit set stands for the k-subsets covering
/// exactly those units, which exist precisely when the set is no larger
/// than `k` and holds at least `k` vertices overall.
fn sweep_units<F>(pg: &PairGraph, k: usize, mut test: F) -> Option<Vec<Unit>>
where
    F: FnMut(&[Unit]) -> bool,
{
    if k > pg.num_vertices() {
        return None;
    }
    let all = units(pg);
    for size in 0..=k.min(all.len()) {
        for subset in crate::combin::Subsets::new(all.len(), size) {
            let chosen: Vec<Unit> = subset.iter().map(|&i| all[i]).collect();
            let capacity: usize = chosen.iter().map(|&u| unit_capacity(u)).sum();
            if capacity < k {
                continue;
            }
            if test(&chosen) {
                return Some(chosen);
            }
        }
    }
    None
}

/// First unit set whose individualization by `k` vertices makes the built
/// graph discrete, if any. Exact: agrees with scanning all k-subsets
/// through the refiner.
pub fn k_discrete_units(pg: &PairGraph, k: usize) -> Option<Vec<Unit>> {
    let analysis = SplitAnalysis::new(pg);
    sweep_units(pg, k, |chosen| analysis.closure(chosen).iter().all(|&s| s))
}

/// First unit set whose individualization by `k` vertices leaves stable
/// cells equal to stabilizer orbits, if any. Exact: agrees with scanning
/// all k-subsets through the refiner and the automorphism group.
pub fn k_refinable_units(pg: &PairGraph, k: usize) -> Option<Vec<Unit>> {
    let analysis = SplitAnalysis::new(pg);
    let basis = flip_basis(pg);
    sweep_units(pg, k, |chosen| {
        let split = analysis.closure(chosen);
        let w = stabilized_basis(&basis, &pinned_columns(pg, chosen));
        analysis.refinable_under(&split, &w)
    })
}

/// Vertex labels of the stable partition predicted from a split state.
/// Comparable against the refiner's stable coloring via `same_partition`.
pub fn predicted_labels(pg: &PairGraph, split: &[bool]) -> Vec<usize> {
    let mut labels = vec![0usize; pg.num_vertices()];
    let mut next = 0;
    for (p, verts) in (0..pg.num_pairs()).map(|p| (p, pg.pair_vertices(p))) {
        if split[p] {
            labels[verts[0]] = next;
            labels[verts[1]] = next + 1;
            next += 2;
        } else {
            labels[verts[0]] = next;
            labels[verts[1]] = next;
            next += 1;
        }
    }
    for c in pg.cfis() {
        let cells = inner_cells(split, (c.left, c.right, c.target));
        for (bc, &v) in c.inner.iter().enumerate() {
            labels[v] = next + inner_label(cells, bc);
        }
        next += 4;
    }
    labels
}
