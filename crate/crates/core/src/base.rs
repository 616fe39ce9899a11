//! Bases of permutation groups: verification, exact minimum, greedy
//! approximation, and the fixed-parameter co-base search.
//!
//! A base is a point set whose pointwise stabilizer is trivial; a co-base
//! of size k is a set of exactly k points whose complement is a base. The
//! co-base search runs the orbit-counting reduction loop: many orbits give
//! an immediate answer, oversized imprimitive orbits are collapsed through
//! their block kernel, oversized primitive orbits are answered directly or
//! shrunk by fixing points, and the bounded remainder is searched
//! exhaustively on a kernel instance.

use crate::combin;
use crate::group::{PermGroup, SymAlt};
use crate::Result;
use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Evidence for one picked base point: the size of its orbit under the
/// stabilizer of the earlier points, and the stabilizer order after
/// fixing it.
#[derive(Clone, Debug)]
pub struct BaseStep {
    pub point: usize,
    pub orbit_size: usize,
    pub order_after: BigUint,
}

/// A minimum base together with per-point evidence.
#[derive(Clone, Debug)]
pub struct BaseResult {
    pub base: Vec<usize>,
    pub b: usize,
    pub certificate: Vec<BaseStep>,
}

/// The bounded instance left over when the co-base search reaches its
/// exhaustive phase: the group restricted to the undecided points.
/// `point_map[i]` is the original point of kernel point `i`.
#[derive(Clone, Debug)]
pub struct CobaseKernel {
    pub group: PermGroup,
    pub point_map: Vec<usize>,
    pub k: usize,
}

/// Outcome of the co-base search. `mandatory_base_points` are the points
/// fixed while shrinking oversized symmetric/alternating orbits; a co-base
/// never contains them. `kernel` is present when the exhaustive phase ran.
#[derive(Clone, Debug)]
pub struct CobaseOutcome {
    pub cobase: Option<Vec<usize>>,
    pub mandatory_base_points: Vec<usize>,
    pub kernel_restarts: usize,
    pub stabilizer_restarts: usize,
    pub kernel: Option<CobaseKernel>,
}

/// Whether the pointwise stabilizer of `s` is trivial.
///
/// # Errors
/// Returns an error if a point of `s` is out of range.
pub fn is_base(group: &PermGroup, s: &[usize]) -> Result<bool> {
    Ok(group.pointwise_stabilizer_order(s)?.is_one())
}

/// A minimum base, found by size-increasing depth-first subset search.
/// Candidate points fixed by the stabilizer of the current prefix are
/// skipped; they can never shrink the stabilizer.
pub fn min_base_exact(group: &PermGroup) -> BaseResult {
    let n = group.n();
    let order = group.order();
    for b in 0..=n {
        if BigUint::from(n.max(1)).pow(b as u32) < order {
            continue;
        }
        let mut prefix = Vec::with_capacity(b);
        if let Some(base) = search_base(group, n, 0, b, &mut prefix) {
            let certificate = certify(group, &base);
            return BaseResult { base, b, certificate };
        }
    }
    unreachable!("the set of all moved points is always a base");
}

fn search_base(
    stab: &PermGroup,
    n: usize,
    start: usize,
    remaining: usize,
    prefix: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if remaining == 0 {
        return stab.is_trivial().then(|| prefix.clone());
    }
    if stab.is_trivial() {
        // A strictly smaller base exists; the outer size loop found none,
        // so this prefix cannot complete to a minimum base of this size.
        return None;
    }
    if stab.order() > BigUint::from(n.max(1)).pow(remaining as u32) {
        return None;
    }
    let moved: Vec<usize> = stab.moved_points();
    for &p in moved.iter().filter(|&&p| p >= start) {
        prefix.push(p);
        let next = stab.pointwise_stabilizer(&[p]).expect("point in range");
        if let Some(found) = search_base(&next, n, p + 1, remaining - 1, prefix) {
            return Some(found);
        }
        prefix.pop();
    }
    None
}

fn certify(group: &PermGroup, base: &[usize]) -> Vec<BaseStep> {
    let mut steps = Vec::with_capacity(base.len());
    let mut stab = group.clone();
    for &p in base {
        let orbit_size = stab.orbit_of(p).len();
        stab = stab.pointwise_stabilizer(&[p]).expect("point in range");
        steps.push(BaseStep { point: p, orbit_size, order_after: stab.order() });
    }
    steps
}

/// Greedy base: repeatedly append the lowest point lying in a largest
/// orbit of the current pointwise stabilizer, until it is trivial.
pub fn greedy_base(group: &PermGroup) -> Vec<usize> {
    let mut base = Vec::new();
    let mut stab = group.clone();
    loop {
        let orbits = stab.orbits();
        let largest = orbits.iter().map(|o| o.len()).max().unwrap_or(0);
        if largest <= 1 {
            return base;
        }
        let pick = orbits.iter().find(|o| o.len() == largest).expect("nonempty")[0];
        base.push(pick);
        stab = stab.pointwise_stabilizer(&[pick]).expect("point in range");
    }
}

/// Searches for a set of exactly `k` points whose complement is a base.
///
/// The reduction loop, with all ties broken toward lowest index:
/// 1. With at least `k` orbits containing a non-mandatory point, picking
///    the lowest such point from each of the first `k` works outright
///    (omitting at most one point per orbit keeps a base).
/// 2. An orbit larger than k^(2k) with imprimitive action either has more
///    than `k` maximal blocks (pick one point from each of the first `k`)
///    or is collapsed by replacing the group with its block kernel.
/// 3. An orbit larger than k^(2k) with primitive action that is neither
///    symmetric nor alternating admits any `k` of its points.
/// 4. An orbit larger than k^(2k) acting as Sym or Alt forces all but `k`
///    of its points (in domain order) into the base; the group is replaced
///    by their pointwise stabilizer and the loop restarts.
/// 5. Otherwise every orbit has at most k^(2k) points and the search space
///    is a bounded kernel: the moved points plus up to `k` spare fixed
///    points, scanned exhaustively for an exact-size witness.
///
/// Every positive answer is verified against the original group before it
/// is returned.
///
/// # Errors
/// Propagates errors from the underlying group operations; none occur for
/// well-formed groups.
pub fn cobase_fpt(group: &PermGroup, k: usize) -> Result<CobaseOutcome> {
    let n = group.n();
    let mut outcome = CobaseOutcome {
        cobase: None,
        mandatory_base_points: Vec::new(),
        kernel_restarts: 0,
        stabilizer_restarts: 0,
        kernel: None,
    };
    if k > n {
        return Ok(outcome);
    }
    if k == 0 {
        // The complement of the empty set is the full domain, a base of
        // every group.
        outcome.cobase = Some(Vec::new());
        return Ok(outcome);
    }
    let threshold = BigUint::from(k).pow(2 * k as u32);
    let mut current = group.clone();
    let mut mandatory: BTreeSet<usize> = BTreeSet::new();
    let found: Option<Vec<usize>> = 'reduce: loop {
        let orbits = current.orbits();
        // Step 1: orbits that still contain a pickable point.
        let pickable: Vec<usize> = orbits
            .iter()
            .filter_map(|o| o.iter().copied().find(|p| !mandatory.contains(p)))
            .collect();
        if pickable.len() >= k {
            break Some(pickable[..k].to_vec());
        }
        let big: Vec<&Vec<usize>> =
            orbits.iter().filter(|o| BigUint::from(o.len()) > threshold).collect();
        let mut systems = Vec::with_capacity(big.len());
        for orbit in &big {
            systems.push(current.maximal_block_system(orbit)?);
        }
        // Step 2: first oversized imprimitive orbit.
        if let Some(system) = systems.iter().find(|s| !s.primitive) {
            if system.blocks.len() > k {
                break Some(system.blocks[..k].iter().map(|b| b[0]).collect());
            }
            current = current.block_kernel(system)?;
            outcome.kernel_restarts += 1;
            assert!(
                outcome.kernel_restarts <= k,
                "each block kernel restart increases the orbit count, so at \
                 most k can happen before step 1 fires"
            );
            continue;
        }
        // Steps 3 and 4: oversized primitive orbits.
        let mut sym_alt_orbit: Option<&Vec<usize>> = None;
        for orbit in &big {
            match current.recognize_sym_alt(orbit)? {
                SymAlt::Other => break 'reduce Some(orbit[..k].to_vec()),
                SymAlt::Sym | SymAlt::Alt => {
                    if sym_alt_orbit.is_none() {
                        sym_alt_orbit = Some(orbit);
                    }
                }
            }
        }
        if let Some(orbit) = sym_alt_orbit {
            let fixed = &orbit[..orbit.len() - k];
            mandatory.extend(fixed.iter().copied());
            current = current.pointwise_stabilizer(fixed)?;
            outcome.stabilizer_restarts += 1;
            continue;
        }
        // Step 5: all orbits bounded; search the kernel exhaustively.
        let mut domain: Vec<usize> = current.moved_points();
        domain.extend(
            current.fixed_points().into_iter().filter(|p| !mandatory.contains(p)).take(k),
        );
        domain.sort_unstable();
        let restriction = current.restrict(&domain)?;
        let witness = exact_cobase_on_kernel(&restriction.group, k)
            .map(|s| s.into_iter().map(|i| restriction.point_map[i]).collect::<Vec<usize>>());
        outcome.kernel =
            Some(CobaseKernel { group: restriction.group, point_map: restriction.point_map, k });
        break witness;
    };
    if let Some(mut s) = found {
        s.sort_unstable();
        let complement: Vec<usize> = (0..n).filter(|p| !s.contains(p)).collect();
        assert!(
            is_base(group, &complement)?,
            "co-base answers must verify against the original group"
        );
        outcome.cobase = Some(s);
    }
    outcome.mandatory_base_points = mandatory.into_iter().collect();
    Ok(outcome)
}

/// Lexicographically least exact-size co-base of the kernel group, or
/// `None`. The scan is rank-indexed so a parallel split cannot change
/// which witness is reported.
fn exact_cobase_on_kernel(kernel: &PermGroup, k: usize) -> Option<Vec<usize>> {
    let m = kernel.n();
    if k > m {
        return None;
    }
    let is_witness = |subset: &[usize]| {
        let complement: Vec<usize> = (0..m).filter(|p| !subset.contains(p)).collect();
        kernel.pointwise_stabilizer_order(&complement).map(|o| o.is_one()).unwrap_or(false)
    };
    match combin::binomial(m, k).and_then(|c| usize::try_from(c).ok()) {
        Some(count) => (0..count)
            .into_par_iter()
            .find_first(|&rank| is_witness(&combin::unrank(m, k, rank as u128)))
            .map(|rank| combin::unrank(m, k, rank as u128)),
        None => combin::Subsets::new(m, k).find(|s| is_witness(s)),
    }
}
