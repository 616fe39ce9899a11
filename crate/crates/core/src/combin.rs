//! Lexicographic k-subset enumeration and unranking.
//!
//! Solvers scan subsets in lexicographic order so reported witnesses are
//! deterministic; unranking lets parallel scans split the space by rank and
//! still return the lexicographically least witness via `find_first`.

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

/// Iterator over k-subsets of `0..n` in lexicographic order.
pub struct Subsets {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Subsets {
    /// Subsets of `0..n` with exactly `k` elements.
    pub fn new(n: usize, k: usize) -> Self {
        let next = if k <= n { Some((0..k).collect()) } else { None };
        Subsets { n, next }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        // Find the rightmost position that can still advance.
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.n - (k - i) {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                return Some(current);
            }
        }
        self.next = None;
        Some(current)
    }
}

/// The rank-th k-subset of `0..n` in lexicographic order.
///
/// # Panics
/// Panics if `rank` is out of range or the space size overflows `u128`.
pub fn unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let total = binomial(n, k).expect("subset space too large to unrank");
    assert!(rank < total, "subset rank out of range");
    let mut out = Vec::with_capacity(k);
    let mut lo = 0;
    let mut remaining = k;
    while remaining > 0 {
        // Count subsets starting with lo: choose the rest from above it.
        let with_lo = binomial(n - lo - 1, remaining - 1).expect("subset space too large");
        if rank < with_lo {
            out.push(lo);
            remaining -= 1;
        } else {
            rank -= with_lo;
        }
        lo += 1;
    }
    out
}

/// All subsets (as sorted index vectors) of `items` with exactly `k`
/// elements, in lexicographic position order.
pub fn subsets_of<T: Copy>(items: &[T], k: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    Subsets::new(items.len(), k).map(move |idx| idx.into_iter().map(|i| items[i]).collect())
}
