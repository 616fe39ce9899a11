//! Vertex-colored simple graphs.
//!
//! Vertices are `0..n`, colors form a dense range `0..c`. Edges are stored
//! with endpoints ordered and the list sorted, so two graphs built from the
//! same edge set compare equal. Twin classes use the combined twin relation
//! (adjacent or non-adjacent), restricted to same-colored vertices: `u` and
//! `v` are twins when swapping them is a color-preserving automorphism.

use crate::perm::Permutation;
use crate::{Error, Result};

/// A simple graph with a dense vertex coloring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredGraph {
    n: usize,
    colors: Vec<usize>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl ColoredGraph {
    /// Builds a graph, validating ranges, simplicity and color density.
    ///
    /// # Errors
    /// Rejects out-of-range endpoints or colors, self-loops, duplicate
    /// edges, and colorings that skip a value below their maximum.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::DomainMismatch { left: n, right: colors.len() });
        }
        let mut canonical: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, size: n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, size: n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "self-loop" });
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge { u: w[0].0, v: w[0].1, reason: "duplicate edge" });
        }
        if n > 0 {
            let c = colors.iter().max().copied().unwrap_or(0) + 1;
            let mut present = vec![false; c];
            for &col in &colors {
                present[col] = true;
            }
            if let Some(missing) = present.iter().position(|&p| !p) {
                return Err(Error::SparseColors { missing });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canonical {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(ColoredGraph { n, colors, edges: canonical, adj })
    }

    /// A graph with every vertex colored 0.
    pub fn uniform(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, edges, vec![0; n])
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of distinct colors (0 for the empty graph).
    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// Color of a vertex.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// The full color table.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Sorted canonical edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of a vertex.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of a vertex.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Adjacency test.
    ///
    /// # Panics
    /// Panics if either endpoint is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Whether every vertex has color 0.
    pub fn is_uniformly_colored(&self) -> bool {
        self.colors.iter().all(|&c| c == 0)
    }

    /// Vertices of each color, indexed by color.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_colors()];
        for v in 0..self.n {
            classes[self.colors[v]].push(v);
        }
        classes
    }

    /// Adjacency rows as bit sets, one `u64` word per 64 vertices.
    pub(crate) fn adjacency_bits(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for &(u, v) in &self.edges {
            rows[u][v / 64] |= 1 << (v % 64);
            rows[v][u / 64] |= 1 << (u % 64);
        }
        rows
    }

    /// Whether `u` and `v` are twins: same color and swapping them is an
    /// automorphism (their neighborhoods agree outside the pair).
    ///
    /// # Panics
    /// Panics if either vertex is out of range.
    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        if self.colors[u] != self.colors[v] {
            return false;
        }
        let nu = self.adj[u].iter().filter(|&&x| x != v);
        let nv = self.adj[v].iter().filter(|&&x| x != u);
        nu.eq(nv)
    }

    /// Partition of the vertices into twin classes.
    ///
    /// The twin relation is transitive because twin swaps are automorphisms
    /// and conjugating one swap by another yields the third. Classes are
    /// ordered by smallest member, members ascending.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let rows = self.adjacency_bits();
        let words = self.n.div_ceil(64);
        let mut class_of: Vec<Option<usize>> = vec![None; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            if class_of[v].is_some() {
                continue;
            }
            let id = classes.len();
            class_of[v] = Some(id);
            classes.push(vec![v]);
            for u in v + 1..self.n {
                if class_of[u].is_some() || self.colors[u] != self.colors[v] {
                    continue;
                }
                // Twins iff the symmetric difference of the adjacency rows
                // is contained in {u, v}.
                let mut twin = true;
                for w in 0..words {
                    let mut diff = rows[v][w] ^ rows[u][w];
                    if v / 64 == w {
                        diff &= !(1 << (v % 64));
                    }
                    if u / 64 == w {
                        diff &= !(1 << (u % 64));
                    }
                    if diff != 0 {
                        twin = false;
                        break;
                    }
                }
                if twin {
                    class_of[u] = Some(id);
                    classes[id].push(u);
                }
            }
        }
        classes
    }

    /// Complements the edges between two distinct color classes.
    ///
    /// Edges inside either class and all other edges are untouched. Applying
    /// the op twice returns the original graph.
    ///
    /// # Errors
    /// Returns an error if the colors are equal or out of range.
    pub fn bipartite_complement(&self, c1: usize, c2: usize) -> Result<ColoredGraph> {
        let nc = self.num_colors();
        if c1 >= nc {
            return Err(Error::IndexOutOfRange { index: c1, size: nc });
        }
        if c2 >= nc {
            return Err(Error::IndexOutOfRange { index: c2, size: nc });
        }
        if c1 == c2 {
            return Err(Error::InvalidCells("bipartite complement needs two distinct colors".into()));
        }
        let in_pair = |u: usize, v: usize| {
            (self.colors[u] == c1 && self.colors[v] == c2)
                || (self.colors[u] == c2 && self.colors[v] == c1)
        };
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().copied().filter(|&(u, v)| !in_pair(u, v)).collect();
        let class1: Vec<usize> = (0..self.n).filter(|&v| self.colors[v] == c1).collect();
        let class2: Vec<usize> = (0..self.n).filter(|&v| self.colors[v] == c2).collect();
        for &u in &class1 {
            for &v in &class2 {
                if !self.has_edge(u, v) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
        ColoredGraph::new(self.n, edges, self.colors.clone())
    }

    /// Relabels vertices by a permutation: vertex `v` becomes `perm(v)`.
    ///
    /// # Panics
    /// Panics if the permutation degree differs from `n`.
    pub fn relabel(&self, perm: &Permutation) -> ColoredGraph {
        assert_eq!(perm.degree(), self.n, "relabeling with wrong degree");
        let mut colors = vec![0; self.n];
        for v in 0..self.n {
            colors[perm.apply(v)] = self.colors[v];
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm.apply(u), perm.apply(v))).collect();
        ColoredGraph::new(self.n, edges, colors).expect("relabeling preserves validity")
    }

    /// Whether a permutation preserves colors and adjacency.
    ///
    /// # Panics
    /// Panics if the permutation degree differs from `n`.
    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        assert_eq!(perm.degree(), self.n, "automorphism check with wrong degree");
        if (0..self.n).any(|v| self.colors[v] != self.colors[perm.apply(v)]) {
            return false;
        }
        self.edges.iter().all(|&(u, v)| self.has_edge(perm.apply(u), perm.apply(v)))
    }

    /// Induced subgraph on `keep` (ascending, deduplicated internally) with
    /// vertices renumbered by position and colors densified preserving the
    /// original color order. Returns the graph and the map from new ids to
    /// original ids.
    ///
    /// # Errors
    /// Returns an error if a vertex repeats or is out of range.
    pub fn induced(&self, keep: &[usize]) -> Result<(ColoredGraph, Vec<usize>)> {
        let mut point_map: Vec<usize> = keep.to_vec();
        point_map.sort_unstable();
        if point_map.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCells("induced subgraph with repeated vertex".into()));
        }
        if let Some(&v) = point_map.last() {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { index: v, size: self.n });
            }
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in point_map.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        let old_colors: Vec<usize> = point_map.iter().map(|&v| self.colors[v]).collect();
        let colors = densify(&old_colors);
        let graph = ColoredGraph::new(point_map.len(), edges, colors)?;
        Ok((graph, point_map))
    }
}

/// Renumbers values to a dense range `0..c` preserving their order.
pub(crate) fn densify(values: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    values.iter().map(|v| sorted.binary_search(v).unwrap()).collect()
}
