//! Color refinement on ordered partitions.
//!
//! A [`Coloring`] is an ordered partition of the vertices into cells. One
//! refinement round splits every cell by the multiset of neighbor cell
//! indices; children replace their parent in order of (parent index,
//! lexicographic signature), so the evolution of cell indices is invariant
//! under isomorphism. Refinement runs to the first round that changes
//! nothing; that round index is recorded as `stabilized_at`.

use crate::graph::{densify, ColoredGraph};
use crate::{Error, Result};
use std::collections::HashMap;

/// An ordered partition of `0..n` into non-empty cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Coloring {
    /// The ordered partition given by a graph's colors: cell `i` holds the
    /// vertices of color `i`.
    pub fn from_graph(g: &ColoredGraph) -> Self {
        Self::from_labels(g.colors())
    }

    /// Builds cells from dense labels, cell order following label order.
    /// Labels need not be dense; cells follow the sorted distinct labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let dense = densify(labels);
        let count = dense.iter().max().map_or(0, |&c| c + 1);
        let mut cells = vec![Vec::new(); count];
        for (v, &c) in dense.iter().enumerate() {
            cells[c].push(v);
        }
        Coloring { cells, cell_of: dense }
    }

    /// Number of cells.
    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.cell_of.len()
    }

    /// The vertices of cell `i`, ascending.
    ///
    /// # Panics
    /// Panics if `i` is out of range.
    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i]
    }

    /// All cells in order.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Index of the cell containing `v`.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    /// Cell indices as a label vector.
    pub fn labels(&self) -> &[usize] {
        &self.cell_of
    }

    /// Whether every cell is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Whether two colorings describe the same unordered partition.
    pub fn same_partition(&self, other: &Coloring) -> bool {
        crate::oracle::same_partition(&self.cell_of, &other.cell_of)
    }

    /// Splits `v` out of its cell: the cell is replaced by `[{v}, rest]` at
    /// its position. A no-op if `v` is already alone.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    pub fn split_off(&self, v: usize) -> Coloring {
        let c = self.cell_of[v];
        if self.cells[c].len() == 1 {
            return self.clone();
        }
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, cell) in self.cells.iter().enumerate() {
            if i == c {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        let mut cell_of = vec![0; self.cell_of.len()];
        for (i, cell) in cells.iter().enumerate() {
            for &u in cell {
                cell_of[u] = i;
            }
        }
        Coloring { cells, cell_of }
    }

    /// Recolors a graph's vertices by cell index.
    ///
    /// # Panics
    /// Panics if the coloring and graph sizes differ.
    pub fn recolor(&self, g: &ColoredGraph) -> ColoredGraph {
        assert_eq!(self.n(), g.n());
        ColoredGraph::new(g.n(), g.edges().to_vec(), self.cell_of.clone())
            .expect("cell indices are dense")
    }
}

/// The rounds of a refinement run. `rounds[0]` is the initial coloring and
/// `stabilized_at` indexes the first round that changed nothing, so
/// `rounds[stabilized_at]` equals `rounds[stabilized_at - 1]` and is stable.
#[derive(Clone, Debug)]
pub struct RefinementTrace {
    pub rounds: Vec<Coloring>,
    pub stabilized_at: usize,
}

impl RefinementTrace {
    /// The stable coloring (last round).
    pub fn stable(&self) -> &Coloring {
        &self.rounds[self.stabilized_at]
    }

    /// The coloring after at most `l` rounds (the stable one if refinement
    /// stabilized earlier).
    pub fn after_rounds(&self, l: usize) -> &Coloring {
        &self.rounds[l.min(self.stabilized_at)]
    }
}

/// One refinement round: splits every cell by the sorted multiset of
/// neighbor cell indices. Children are ordered by (parent cell index,
/// lexicographic signature).
pub fn refine_step(g: &ColoredGraph, coloring: &Coloring) -> Coloring {
    let n = g.n();
    // Signature of v: its neighbors' cell indices, sorted. Built by
    // counting per cell, then expanding touched cells in index order.
    let mut counts = vec![0usize; coloring.num_cells()];
    let mut signatures: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut touched: Vec<usize> = Vec::new();
        for &u in g.neighbors(v) {
            let c = coloring.cell_of(u);
            if counts[c] == 0 {
                touched.push(c);
            }
            counts[c] += 1;
        }
        touched.sort_unstable();
        let mut sig = Vec::with_capacity(g.degree(v));
        for &c in &touched {
            sig.extend(std::iter::repeat(c).take(counts[c]));
            counts[c] = 0;
        }
        signatures.push(sig);
    }
    let mut cells: Vec<Vec<usize>> = Vec::with_capacity(coloring.num_cells());
    for cell in coloring.cells() {
        let mut groups: HashMap<&Vec<usize>, Vec<usize>> = HashMap::new();
        for &v in cell {
            groups.entry(&signatures[v]).or_default().push(v);
        }
        let mut children: Vec<(&Vec<usize>, Vec<usize>)> = groups.into_iter().collect();
        children.sort_by(|a, b| a.0.cmp(b.0));
        cells.extend(children.into_iter().map(|(_, members)| members));
    }
    let mut cell_of = vec![0; n];
    for (i, cell) in cells.iter().enumerate() {
        for &v in cell {
            cell_of[v] = i;
        }
    }
    Coloring { cells, cell_of }
}

/// Runs refinement from a given initial coloring to its fixpoint.
pub fn stable_from(g: &ColoredGraph, initial: Coloring) -> RefinementTrace {
    let mut rounds = vec![initial];
    loop {
        let next = refine_step(g, rounds.last().expect("at least the initial round"));
        let unchanged = next.num_cells() == rounds.last().unwrap().num_cells();
        rounds.push(next);
        if unchanged {
            let stabilized_at = rounds.len() - 1;
            return RefinementTrace { rounds, stabilized_at };
        }
    }
}

/// Runs refinement from the graph's own colors to its fixpoint.
pub fn stable_coloring(g: &ColoredGraph) -> RefinementTrace {
    stable_from(g, Coloring::from_graph(g))
}

/// The coloring after at most `l` refinement rounds from the graph's own
/// colors.
pub fn refine_rounds(g: &ColoredGraph, l: usize) -> Coloring {
    let mut current = Coloring::from_graph(g);
    for _ in 0..l {
        let next = refine_step(g, &current);
        if next.num_cells() == current.num_cells() {
            return current;
        }
        current = next;
    }
    current
}

/// Recolors the graph so each vertex of `seq`, in order, gets a fresh color
/// after the existing ones; remaining colors are densified preserving
/// order.
///
/// # Errors
/// Returns an error if a vertex repeats or is out of range.
pub fn individualize(g: &ColoredGraph, seq: &[usize]) -> Result<ColoredGraph> {
    let mut labels = g.colors().to_vec();
    let mut fresh = g.num_colors();
    let mut seen = vec![false; g.n()];
    for &v in seq {
        if v >= g.n() {
            return Err(Error::IndexOutOfRange { index: v, size: g.n() });
        }
        if seen[v] {
            return Err(Error::InvalidCells(format!("vertex {v} individualized twice")));
        }
        seen[v] = true;
        labels[v] = fresh;
        fresh += 1;
    }
    ColoredGraph::new(g.n(), g.edges().to_vec(), densify(&labels))
}

/// Whether the stable coloring of the graph is discrete.
pub fn is_discrete(g: &ColoredGraph) -> bool {
    stable_coloring(g).stable().is_discrete()
}

/// Whether at most `l` refinement rounds already reach a discrete coloring.
pub fn is_discrete_within(g: &ColoredGraph, l: usize) -> bool {
    refine_rounds(g, l).is_discrete()
}

/// The color valence of the graph with respect to its own coloring: the
/// maximum over vertices `v` and color classes `C` of
/// `min(deg_C(v), |C| - deg_C(v))`, where `|C|` counts `v` itself when
/// `v` is in `C`.
pub fn color_valence(g: &ColoredGraph) -> usize {
    let classes = g.color_classes();
    let mut valence = 0;
    for v in 0..g.n() {
        let mut deg = vec![0usize; classes.len()];
        for &u in g.neighbors(v) {
            deg[g.color(u)] += 1;
        }
        for (c, class) in classes.iter().enumerate() {
            valence = valence.max(deg[c].min(class.len() - deg[c]));
        }
    }
    valence
}

/// Per-round invariant of a refinement run: cell counts of every round and
/// the final cell sizes. Used by the automorphism search to prune branches
/// whose refinement behavior diverges from the first explored branch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct RefinementSignature {
    pub round_cell_counts: Vec<usize>,
    pub final_cell_sizes: Vec<usize>,
}

/// Refines to the fixpoint, returning only the stable coloring and its
/// signature (cheaper than keeping the full trace).
pub(crate) fn stable_with_signature(
    g: &ColoredGraph,
    initial: Coloring,
) -> (Coloring, RefinementSignature) {
    let mut counts = vec![initial.num_cells()];
    let mut current = initial;
    loop {
        let next = refine_step(g, &current);
        let unchanged = next.num_cells() == current.num_cells();
        counts.push(next.num_cells());
        current = next;
        if unchanged {
            let sizes = current.cells().iter().map(|c| c.len()).collect();
            return (current, RefinementSignature { round_cell_counts: counts, final_cell_sizes: sizes });
        }
    }
}
