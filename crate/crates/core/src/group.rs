//! Permutation groups given by generators.
//!
//! A [`PermGroup`] lazily builds a base and strong generating set (BSGS)
//! with a deterministic incremental Schreier-Sims: generators sift before
//! insertion, transversal entries are only ever extended (never replaced),
//! and every new (orbit point, generator) Schreier product is pushed to the
//! next level. Stabilizer chains can be built with a prescribed base
//! prefix, which yields pointwise stabilizers and block-action kernels.
//!
//! Block systems use the classical union-find closure seeded by a point
//! pair; maximal systems iterate it on quotient actions until the quotient
//! is primitive.

use crate::perm::Permutation;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashSet;
use std::sync::OnceLock;

/// One level of a stabilizer chain. `gens` is the full strong generator
/// list for this level (every strong generator fixing the base points of
/// all shallower levels), `orbit` is the orbit of `point` under them in
/// BFS discovery order, and `transversal[x]` maps `point` to `x`.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point] = Some(Permutation::identity(n));
        Level { point, gens: Vec::new(), orbit: vec![point], transversal }
    }

    /// Recomputes the orbit and transversal from the current generators.
    fn rebuild(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.point] = Some(Permutation::identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let rep = Permutation::compose(
                        self.transversal[x].as_ref().expect("orbit points have reps"),
                        g,
                    );
                    self.transversal[y] = Some(rep);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug, Default)]
struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    /// Multiplies `g` by transversal inverses along the chain from `level`.
    /// Returns the residue; identity means membership.
    fn sift_from(&self, level: usize, g: &Permutation) -> Permutation {
        let mut residue = g.clone();
        for lvl in &self.levels[level..] {
            let y = residue.apply(lvl.point);
            match &lvl.transversal[y] {
                Some(rep) => residue = Permutation::compose(&residue, &rep.inverse()),
                None => return residue,
            }
        }
        residue
    }

    /// Records a nonidentity strong generator without reverifying anything.
    /// Returns the deepest level whose base point prefix `g` fixes; `g`
    /// joins the generator lists of that level and all shallower ones. A
    /// new level (based at the smallest moved point) is appended when `g`
    /// fixes every existing base point.
    fn insert_raw(&mut self, n: usize, g: Permutation) -> usize {
        debug_assert!(!g.is_identity());
        let mut level = 0;
        while level < self.levels.len() && g.apply(self.levels[level].point) == self.levels[level].point
        {
            level += 1;
        }
        if level == self.levels.len() {
            self.levels.push(Level::new(g.support()[0], n));
        }
        for lvl in &mut self.levels[..=level] {
            lvl.gens.push(g.clone());
        }
        level
    }

    /// Scans all Schreier generators of `level` and returns the first one
    /// whose sift through the deeper levels leaves a nonidentity residue.
    fn first_defect(&self, level: usize) -> Option<Permutation> {
        let lvl = &self.levels[level];
        for &x in &lvl.orbit {
            for h in &lvl.gens {
                let u_x = lvl.transversal[x].as_ref().expect("orbit point");
                let xh = h.apply(x);
                let u_xh = lvl.transversal[xh].as_ref().expect("orbit closed");
                let s = Permutation::compose(&Permutation::compose(u_x, h), &u_xh.inverse());
                if s.is_identity() {
                    continue;
                }
                let residue = self.sift_from(level + 1, &s);
                if !residue.is_identity() {
                    return Some(residue);
                }
            }
        }
        None
    }

    /// Bottom-up Schreier-Sims completion. Verifies each level against the
    /// (already complete) deeper part of the chain; a failed sift residue
    /// is inserted at its proper depth and verification resumes there.
    fn complete(&mut self, n: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            self.levels[i].rebuild(n);
            match self.first_defect(i) {
                Some(residue) => {
                    let inserted_at = self.insert_raw(n, residue);
                    debug_assert!(inserted_at > i, "residues fix the scanned prefix");
                    i = inserted_at;
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for lvl in &self.levels {
            order *= BigUint::from(lvl.orbit.len());
        }
        order
    }

    /// Generators of the stabilizer of the first `depth` base points:
    /// the strong generator list of the level below the prefix.
    fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        match self.levels.get(depth) {
            Some(lvl) => lvl.gens.clone(),
            None => Vec::new(),
        }
    }
}

/// Builds a complete stabilizer chain whose first levels use exactly the
/// prescribed base points (in order), creating them even when their orbits
/// stay trivial.
fn build_chain(n: usize, gens: &[Permutation], prescribed: &[usize]) -> StabChain {
    let mut chain = StabChain::default();
    for &p in prescribed {
        chain.levels.push(Level::new(p, n));
    }
    for g in gens {
        if !g.is_identity() {
            chain.insert_raw(n, g.clone());
        }
    }
    chain.complete(n);
    chain
}

/// How a transitive orbit restriction compares to the full symmetric and
/// alternating groups on that orbit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymAlt {
    Sym,
    Alt,
    Other,
}

/// A system of blocks for a transitive action on `orbit`. When the action
/// is primitive the blocks are singletons and `primitive` is set.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub orbit: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub primitive: bool,
}

/// A group restricted to an invariant point set, reindexed to
/// `0..point_map.len()`; `point_map[i]` is the original point of new
/// point `i`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub group: PermGroup,
    pub point_map: Vec<usize>,
}

/// A permutation group on `0..n` given by generators, with a lazily built
/// stabilizer chain.
#[derive(Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    bsgs: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let bsgs = OnceLock::new();
        if let Some(chain) = self.bsgs.get() {
            let _ = bsgs.set(chain.clone());
        }
        PermGroup { n: self.n, generators: self.generators.clone(), bsgs }
    }
}

impl PermGroup {
    /// Builds a group from generators, dropping identities and duplicates.
    ///
    /// # Errors
    /// Returns an error if a generator's degree differs from `n`.
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        let mut kept: Vec<Permutation> = Vec::with_capacity(generators.len());
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for g in generators {
            if g.degree() != n {
                return Err(Error::DomainMismatch { left: n, right: g.degree() });
            }
            if !g.is_identity() && seen.insert(g.images().to_vec()) {
                kept.push(g);
            }
        }
        Ok(PermGroup { n, generators: kept, bsgs: OnceLock::new() })
    }

    /// The trivial group on `0..n`.
    pub fn trivial(n: usize) -> Self {
        PermGroup { n, generators: Vec::new(), bsgs: OnceLock::new() }
    }

    /// Domain size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The stored (deduplicated, identity-free) generators.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Whether the group is trivial (no nonidentity generators).
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn chain(&self) -> &StabChain {
        self.bsgs.get_or_init(|| build_chain(self.n, &self.generators, &[]))
    }

    /// Forces construction of the base and strong generating set.
    pub fn build_bsgs(&self) {
        let _ = self.chain();
    }

    /// Exact group order.
    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Exact membership test by sifting.
    ///
    /// # Errors
    /// Returns an error if the degree differs from the group's domain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.n {
            return Err(Error::DomainMismatch { left: self.n, right: g.degree() });
        }
        Ok(self.chain().sift_from(0, g).is_identity())
    }

    /// Orbit partition of the domain, orbits sorted by smallest point,
    /// each orbit ascending.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut orbits = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for g in &self.generators {
                    let y = g.apply(orbit[i]);
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

    /// The orbit of one point, ascending.
    ///
    /// # Panics
    /// Panics if `point` is out of range.
    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        assert!(point < self.n, "orbit point out of range");
        let mut seen = vec![false; self.n];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.generators {
                let y = g.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Points moved by at least one generator, ascending.
    pub fn moved_points(&self) -> Vec<usize> {
        let mut moved = vec![false; self.n];
        for g in &self.generators {
            for p in g.support() {
                moved[p] = true;
            }
        }
        (0..self.n).filter(|&p| moved[p]).collect()
    }

    /// Points fixed by every generator, ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        let moved: HashSet<usize> = self.moved_points().into_iter().collect();
        (0..self.n).filter(|p| !moved.contains(p)).collect()
    }

    /// The subgroup fixing every point of `s`, via a stabilizer chain whose
    /// base starts with the points of `s`.
    ///
    /// # Errors
    /// Returns an error if a point is out of range.
    pub fn pointwise_stabilizer(&self, s: &[usize]) -> Result<PermGroup> {
        let prefix = self.stabilizer_prefix(s)?;
        let chain = build_chain(self.n, &self.generators, &prefix);
        PermGroup::new(self.n, chain.stabilizer_gens(prefix.len()))
    }

    /// Order of the pointwise stabilizer of `s`, without materializing it.
    ///
    /// # Errors
    /// Returns an error if a point is out of range.
    pub fn pointwise_stabilizer_order(&self, s: &[usize]) -> Result<BigUint> {
        let prefix = self.stabilizer_prefix(s)?;
        let chain = build_chain(self.n, &self.generators, &prefix);
        let mut order = BigUint::one();
        for lvl in &chain.levels[prefix.len()..] {
            order *= BigUint::from(lvl.orbit.len());
        }
        Ok(order)
    }

    fn stabilizer_prefix(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mut prefix = Vec::with_capacity(s.len());
        let mut seen = HashSet::new();
        for &p in s {
            if p >= self.n {
                return Err(Error::IndexOutOfRange { index: p, size: self.n });
            }
            if seen.insert(p) {
                prefix.push(p);
            }
        }
        Ok(prefix)
    }

    fn check_transitive(&self, orbit: &[usize]) -> Result<Vec<usize>> {
        let mut sorted = orbit.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != orbit.len() {
            return Err(Error::InvalidCells("orbit contains repeated points".into()));
        }
        match sorted.first() {
            None => return Err(Error::InvalidCells("orbit is empty".into())),
            Some(&p) => {
                if *sorted.last().unwrap() >= self.n {
                    return Err(Error::IndexOutOfRange { index: *sorted.last().unwrap(), size: self.n });
                }
                if self.orbit_of(p) != sorted {
                    return Err(Error::InvalidCells("group is not transitive on the given set".into()));
                }
            }
        }
        Ok(sorted)
    }

    /// Finest block system of the action on `orbit` in which `a` and `b`
    /// share a block. Returns the blocks (sorted by smallest member).
    fn seeded_blocks(&self, orbit: &[usize], a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        let mut queue = vec![(a, b)];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[rb] = ra;
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[ry] = rx;
                    queue.push((gx, gy));
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_to_block: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        for &p in orbit {
            let r = find(&mut parent, p);
            let idx = *root_to_block.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(p);
        }
        blocks
    }

    /// Whether the transitive action on `orbit` has no nontrivial blocks.
    ///
    /// # Errors
    /// Returns an error if the group is not transitive on `orbit`.
    pub fn is_primitive(&self, orbit: &[usize]) -> Result<bool> {
        let sorted = self.check_transitive(orbit)?;
        if sorted.len() <= 2 {
            return Ok(true);
        }
        let a = sorted[0];
        for &b in &sorted[1..] {
            if self.seeded_blocks(&sorted, a, b).len() > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A maximal nontrivial block system of the transitive action on
    /// `orbit` (the induced action on its blocks is primitive). Primitive
    /// actions yield the singleton system with the `primitive` flag set.
    ///
    /// # Errors
    /// Returns an error unless the group is transitive on `orbit` and
    /// `orbit` has at least 2 points.
    pub fn maximal_block_system(&self, orbit: &[usize]) -> Result<BlockSystem> {
        let sorted = self.check_transitive(orbit)?;
        if sorted.len() < 2 {
            return Err(Error::InvalidCells("block system needs at least 2 points".into()));
        }
        let mut blocks: Vec<Vec<usize>> = sorted.iter().map(|&p| vec![p]).collect();
        loop {
            let r = blocks.len();
            if r == 1 {
                break;
            }
            // Quotient action on block indices (blocks ordered by smallest
            // member, which `seeded_blocks` and the lift both preserve).
            let mut block_of = vec![usize::MAX; self.n];
            for (i, block) in blocks.iter().enumerate() {
                for &p in block {
                    block_of[p] = i;
                }
            }
            let quotient_gens: Vec<Permutation> = self
                .generators
                .iter()
                .map(|g| {
                    let images: Vec<usize> =
                        blocks.iter().map(|block| block_of[g.apply(block[0])]).collect();
                    Permutation::from_images(images).expect("blocks are permuted")
                })
                .collect();
            let quotient = PermGroup::new(r, quotient_gens).expect("degrees match");
            let indices: Vec<usize> = (0..r).collect();
            let mut merged: Option<Vec<Vec<usize>>> = None;
            for j in 1..r {
                let classes = quotient.seeded_blocks(&indices, 0, j);
                if classes.len() > 1 {
                    merged = Some(classes);
                    break;
                }
            }
            match merged {
                None => break,
                Some(classes) => {
                    let mut lifted: Vec<Vec<usize>> = classes
                        .iter()
                        .map(|class| {
                            let mut block: Vec<usize> =
                                class.iter().flat_map(|&i| blocks[i].iter().copied()).collect();
                            block.sort_unstable();
                            block
                        })
                        .collect();
                    lifted.sort_by_key(|b| b[0]);
                    blocks = lifted;
                }
            }
        }
        let primitive = blocks.iter().all(|b| b.len() == 1);
        Ok(BlockSystem { orbit: sorted, blocks, primitive })
    }

    /// Validates that `system` is a block system for this group.
    ///
    /// # Errors
    /// Returns an error if the blocks do not partition the orbit into
    /// equal-size parts or some generator does not permute them.
    pub fn validate_block_system(&self, system: &BlockSystem) -> Result<()> {
        let sorted = self.check_transitive(&system.orbit)?;
        let mut union: Vec<usize> = system.blocks.iter().flatten().copied().collect();
        union.sort_unstable();
        if union != sorted {
            return Err(Error::InvalidBlocks("blocks do not partition the orbit".into()));
        }
        let size = system.blocks.first().map_or(0, |b| b.len());
        if size == 0 || system.blocks.iter().any(|b| b.len() != size) {
            return Err(Error::InvalidBlocks("blocks must be non-empty and equal-sized".into()));
        }
        let mut block_of = vec![usize::MAX; self.n];
        for (i, block) in system.blocks.iter().enumerate() {
            for &p in block {
                block_of[p] = i;
            }
        }
        for g in &self.generators {
            for block in &system.blocks {
                let target = block_of[g.apply(block[0])];
                if block.iter().any(|&p| block_of[g.apply(p)] != target) {
                    return Err(Error::InvalidBlocks("a generator splits a block".into()));
                }
            }
        }
        Ok(())
    }

    /// The subgroup mapping every block of `system` to itself, computed by
    /// a stabilizer chain on the domain extended with one point per block.
    ///
    /// # Errors
    /// Returns an error if the system is invalid for this group.
    pub fn block_kernel(&self, system: &BlockSystem) -> Result<PermGroup> {
        self.validate_block_system(system)?;
        let r = system.blocks.len();
        let big_n = self.n + r;
        let mut block_of = vec![usize::MAX; self.n];
        for (i, block) in system.blocks.iter().enumerate() {
            for &p in block {
                block_of[p] = i;
            }
        }
        let extended: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| {
                let mut images: Vec<usize> = g.images().to_vec();
                for block in &system.blocks {
                    images.push(self.n + block_of[g.apply(block[0])]);
                }
                Permutation::from_images(images).expect("extension is a bijection")
            })
            .collect();
        let prefix: Vec<usize> = (self.n..big_n).collect();
        let chain = build_chain(big_n, &extended, &prefix);
        let kernel_gens: Vec<Permutation> = chain
            .stabilizer_gens(r)
            .iter()
            .map(|g| {
                Permutation::from_images(g.images()[..self.n].to_vec())
                    .expect("kernel elements fix block points")
            })
            .collect();
        PermGroup::new(self.n, kernel_gens)
    }

    /// Classifies the restriction of the group to a transitive orbit by
    /// exact order comparison with |orbit|! and |orbit|!/2.
    ///
    /// # Errors
    /// Returns an error if the group is not transitive on `orbit`.
    pub fn recognize_sym_alt(&self, orbit: &[usize]) -> Result<SymAlt> {
        let sorted = self.check_transitive(orbit)?;
        let restriction = self.restrict(&sorted)?;
        let order = restriction.group.order();
        let full = factorial(sorted.len());
        if order == full {
            return Ok(SymAlt::Sym);
        }
        if sorted.len() >= 2 && order == &full / 2u8 {
            return Ok(SymAlt::Alt);
        }
        Ok(SymAlt::Other)
    }

    /// Restriction of the group to an invariant point set, reindexed to
    /// `0..set.len()` with the order-preserving point map recorded.
    ///
    /// # Errors
    /// Returns [`Error::NotInvariant`] if some generator moves a point of
    /// the set outside it.
    pub fn restrict(&self, set: &[usize]) -> Result<Restriction> {
        let mut point_map = set.to_vec();
        point_map.sort_unstable();
        point_map.dedup();
        if let Some(&p) = point_map.last() {
            if p >= self.n {
                return Err(Error::IndexOutOfRange { index: p, size: self.n });
            }
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &p) in point_map.iter().enumerate() {
            new_id[p] = i;
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut images = Vec::with_capacity(point_map.len());
            for &p in &point_map {
                let q = g.apply(p);
                if new_id[q] == usize::MAX {
                    return Err(Error::NotInvariant);
                }
                images.push(new_id[q]);
            }
            gens.push(Permutation::from_images(images).expect("restriction is a bijection"));
        }
        Ok(Restriction { group: PermGroup::new(point_map.len(), gens)?, point_map })
    }
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Generators (possibly redundant) of the pointwise stabilizer of `points`
/// in the group generated by `gens`, via iterated Schreier generators with
/// deduplication. Avoids building a full stabilizer chain; intended for
/// short point lists, since the generator count can grow with each point.
pub fn schreier_stabilizer_gens(
    n: usize,
    gens: &[Permutation],
    points: &[usize],
) -> Vec<Permutation> {
    let mut current: Vec<Permutation> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for g in gens {
        if !g.is_identity() && seen.insert(g.images().to_vec()) {
            current.push(g.clone());
        }
    }
    for &p in points {
        assert!(p < n, "stabilized point out of range");
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        transversal[p] = Some(Permutation::identity(n));
        let mut orbit = vec![p];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &current {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    let rep =
                        Permutation::compose(transversal[x].as_ref().expect("orbit point"), g);
                    transversal[y] = Some(rep);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        let mut next: Vec<Permutation> = Vec::new();
        let mut next_seen: HashSet<Vec<usize>> = HashSet::new();
        for &x in &orbit {
            for g in &current {
                let u_x = transversal[x].as_ref().expect("orbit point");
                let xg = g.apply(x);
                let u_xg = transversal[xg].as_ref().expect("orbit closed");
                let s = Permutation::compose(&Permutation::compose(u_x, g), &u_xg.inverse());
                if !s.is_identity() && next_seen.insert(s.images().to_vec()) {
                    next.push(s);
                }
            }
        }
        current = next;
    }
    current
}
