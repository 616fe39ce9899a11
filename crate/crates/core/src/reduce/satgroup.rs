//! Small formulas to set cover, to elementary abelian groups, to graphs.
//!
//! A 3-CNF formula with a budget parameter `k` maps to a set cover
//! instance whose universe mixes one marker per clause and one per
//! variable block, then to a group of order `2^(m+k)` acting on a disjoint
//! union of boolean cubes, one cube per (block, assignment) pair. Fixing
//! any point of a cube pins exactly the coordinates in that cube's index
//! set, so a point set is a base precisely when the touched index sets
//! cover the universe. Minimum base size therefore equals minimum cover
//! size, and both equal `k` exactly when the formula is satisfiable. A
//! final step realizes the same action as the automorphism group of a
//! colored graph, one size-2 class per universe element, turning fixing
//! sets into bases.

use crate::graph::ColoredGraph;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

/// 3-CNF formula; a literal is (variable, is-positive). Every variable
/// occurs at most three times across all clauses.
#[derive(Clone, Debug)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<(usize, bool)>>,
}

impl CnfFormula {
    /// Validates clause shape and the three-occurrence limit.
    ///
    /// # Errors
    /// Returns an error when a clause is empty or longer than three
    /// literals, a variable index is out of range, or a variable occurs
    /// more than three times.
    pub fn new(num_vars: usize, clauses: Vec<Vec<(usize, bool)>>) -> Result<Self> {
        let mut occurrences = vec![0usize; num_vars];
        for (idx, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::InvalidInput(format!(
                    "clause {idx} has {} literals; expected 1 to 3",
                    clause.len()
                )));
            }
            for &(v, _) in clause {
                if v >= num_vars {
                    return Err(Error::IndexOutOfRange { index: v, size: num_vars });
                }
                occurrences[v] += 1;
            }
        }
        if let Some(v) = occurrences.iter().position(|&t| t > 3) {
            return Err(Error::InvalidInput(format!(
                "variable {v} occurs {} times; at most 3 allowed (use normalized)",
                occurrences[v]
            )));
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from arbitrary clauses by duplicating variables
    /// that occur more than three times: each occurrence gets its own
    /// copy and a cycle of implication clauses keeps all copies equal, so
    /// the result is satisfiable exactly when the input is.
    ///
    /// # Errors
    /// Returns an error for malformed clauses, as in [`CnfFormula::new`].
    pub fn normalized(num_vars: usize, clauses: Vec<Vec<(usize, bool)>>) -> Result<Self> {
        let mut clauses = clauses;
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_vars];
        for (ci, clause) in clauses.iter().enumerate() {
            for (li, &(v, _)) in clause.iter().enumerate() {
                if v >= num_vars {
                    return Err(Error::IndexOutOfRange { index: v, size: num_vars });
                }
                slots[v].push((ci, li));
            }
        }
        let mut next_var = num_vars;
        let mut cycles: Vec<Vec<(usize, bool)>> = Vec::new();
        for v in 0..num_vars {
            let occ = &slots[v];
            if occ.len() <= 3 {
                continue;
            }
            let mut copies = vec![v];
            for &(ci, li) in &occ[1..] {
                clauses[ci][li].0 = next_var;
                copies.push(next_var);
                next_var += 1;
            }
            for w in 0..copies.len() {
                let succ = copies[(w + 1) % copies.len()];
                cycles.push(vec![(copies[w], false), (succ, true)]);
            }
        }
        clauses.extend(cycles);
        Self::new(next_var, clauses)
    }

    /// Number of variables, including any copies added by `normalized`.
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// The clauses, each a list of (variable, is-positive) literals.
    pub fn clauses(&self) -> &[Vec<(usize, bool)>] {
        &self.clauses
    }

    /// Whether the assignment satisfies every clause.
    ///
    /// # Panics
    /// Panics when the assignment length differs from the variable count.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.num_vars, "assignment length");
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|&(v, pos)| assignment[v] == pos))
    }
}

/// Set cover instance over the universe `0..universe`; `sets[s]` is
/// sorted. Sets are indexed like the constituents that produced them.
#[derive(Clone, Debug)]
pub struct SetCoverInstance {
    /// Universe size; elements `0..m` mark clauses, `m..m+k` mark blocks.
    pub universe: usize,
    /// The candidate sets, sorted ascending.
    pub sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    /// Whether the chosen set indices cover the whole universe.
    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.universe];
        for &s in chosen {
            for &e in &self.sets[s] {
                hit[e] = true;
            }
        }
        hit.iter().all(|&h| h)
    }
}

/// One boolean cube of the group's domain: the points
/// `offset..offset + 2^set.len()`, where bit `q` of a point's index gives
/// its coordinate for universe element `set[q]`.
#[derive(Clone, Debug)]
pub struct Constituent {
    /// Which variable block this cube belongs to.
    pub block: usize,
    /// The block assignment, bit `r` giving the value of the block's
    /// `r`-th variable.
    pub assignment: usize,
    /// First point of the cube.
    pub offset: usize,
    /// Universe elements indexing the cube's coordinates, sorted.
    pub set: Vec<usize>,
}

impl Constituent {
    /// Number of points in the cube.
    pub fn num_points(&self) -> usize {
        1 << self.set.len()
    }
}

/// A formula compiled to a set cover instance and a matching group.
#[derive(Clone, Debug)]
pub struct SatGroupInstance {
    /// The cover instance; `sets[c]` is `constituents[c].set`.
    pub cover: SetCoverInstance,
    /// Group of order `2^universe` acting on the union of the cubes,
    /// generated by one coordinate flip per universe element.
    pub group: PermGroup,
    /// Variables per block, ascending; exactly `k` blocks, trailing ones
    /// possibly empty.
    pub blocks: Vec<Vec<usize>>,
    /// The cubes making up the group's domain, in point order.
    pub constituents: Vec<Constituent>,
    /// Clause count of the source formula.
    pub num_clauses: usize,
}

impl SatGroupInstance {
    /// Index of the constituent holding the given domain point.
    pub fn constituent_of(&self, point: usize) -> usize {
        match self.constituents.binary_search_by_key(&point, |c| c.offset) {
            Ok(c) => c,
            Err(c) => c - 1,
        }
    }

    /// Whether fixing the given points pins every universe element; by
    /// construction this says exactly when the points form a base.
    pub fn covered_by_points(&self, points: &[usize]) -> bool {
        let chosen: Vec<usize> = points.iter().map(|&p| self.constituent_of(p)).collect();
        self.cover.is_cover(&chosen)
    }
}

/// Compiles a formula and budget `k` into a set cover instance and the
/// coordinate-flip group over its cubes. The variable set is split into
/// `k` blocks of at most `floor(log2(n))` variables, filled greedily in
/// variable order; the cube for block `i` under assignment `a` is indexed
/// by the block marker `m+i` together with every clause that `a`
/// satisfies.
///
/// # Errors
/// Returns an error when `k` or `n` is zero, or when the clause count or
/// the variable count exceeds `k * floor(log2(n))`.
pub fn mini3sat_to_group(f: &CnfFormula, k: usize, n: usize) -> Result<SatGroupInstance> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidInput("both k and n must be positive".into()));
    }
    let block_cap = n.ilog2() as usize;
    let m = f.clauses().len();
    let budget = k * block_cap;
    if m > budget {
        return Err(Error::SizeBound(format!(
            "{m} clauses exceed the budget {k} * {block_cap}"
        )));
    }
    if f.num_vars() > budget {
        return Err(Error::SizeBound(format!(
            "{} variables exceed the budget {k} * {block_cap}",
            f.num_vars()
        )));
    }

    let blocks: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let lo = (i * block_cap).min(f.num_vars());
            let hi = ((i + 1) * block_cap).min(f.num_vars());
            (lo..hi).collect()
        })
        .collect();

    let universe = m + k;
    let mut constituents = Vec::new();
    let mut sets = Vec::new();
    let mut offset = 0;
    for (i, block) in blocks.iter().enumerate() {
        for a in 0..1usize << block.len() {
            let mut set: Vec<usize> = (0..m)
                .filter(|&j| {
                    f.clauses()[j].iter().any(|&(v, pos)| {
                        block
                            .iter()
                            .position(|&bv| bv == v)
                            .is_some_and(|r| (a >> r & 1 == 1) == pos)
                    })
                })
                .collect();
            set.push(m + i);
            let c = Constituent { block: i, assignment: a, offset, set };
            offset += c.num_points();
            sets.push(c.set.clone());
            constituents.push(c);
        }
    }

    let num_points = offset;
    let mut generators = Vec::with_capacity(universe);
    for t in 0..universe {
        let mut images: Vec<usize> = (0..num_points).collect();
        for c in &constituents {
            if let Some(q) = c.set.iter().position(|&e| e == t) {
                for p in 0..c.num_points() {
                    images[c.offset + p] = c.offset + (p ^ (1 << q));
                }
            }
        }
        generators.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::new(num_points, generators)?;

    Ok(SatGroupInstance {
        cover: SetCoverInstance { universe, sets },
        group,
        blocks,
        constituents,
        num_clauses: m,
    })
}

/// A group instance realized as a colored graph: the cube points keep
/// their indices as vertices `0..num_points`, each in a color class of
/// its own constituent, and universe element `t` gets the 2-class
/// `{num_points + 2t, num_points + 2t + 1}`. Point `p` of a cube with
/// index set `S` is adjacent to side `bit q of p` of the class of `S[q]`.
#[derive(Clone, Debug)]
pub struct RigidGraphInstance {
    /// The built graph, with `num_points + 2 * universe` vertices.
    pub graph: ColoredGraph,
    /// How many leading vertices are cube points.
    pub num_points: usize,
    /// Universe size of the source instance.
    pub universe: usize,
}

impl RigidGraphInstance {
    /// The two vertices of universe element `t`'s color class.
    pub fn flip_class(&self, t: usize) -> [usize; 2] {
        [self.num_points + 2 * t, self.num_points + 2 * t + 1]
    }
}

/// Realizes the instance's group as the automorphism group of a colored
/// graph. Automorphisms flip some universe classes and move the cube
/// points accordingly, so a set of point vertices is a fixing set of the
/// graph exactly when it is a base of the group.
pub fn group_to_rigid_graph(inst: &SatGroupInstance) -> RigidGraphInstance {
    let num_points = inst.group.n();
    let universe = inst.cover.universe;
    let n = num_points + 2 * universe;
    let mut colors = vec![0usize; n];
    let mut edges = Vec::new();
    for (ci, c) in inst.constituents.iter().enumerate() {
        for p in 0..c.num_points() {
            colors[c.offset + p] = ci;
            for (q, &t) in c.set.iter().enumerate() {
                let side = p >> q & 1;
                edges.push((c.offset + p, num_points + 2 * t + side));
            }
        }
    }
    for t in 0..universe {
        colors[num_points + 2 * t] = inst.constituents.len() + t;
        colors[num_points + 2 * t + 1] = inst.constituents.len() + t;
    }
    let graph = ColoredGraph::new(n, edges, colors).expect("construction is always valid");
    RigidGraphInstance { graph, num_points, universe }
}
