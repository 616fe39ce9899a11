//! Permutations on the domain `0..n` stored as image tables.
//!
//! Composition is left-to-right: `compose(g, h)` maps `x` to `h[g[x]]`, so
//! points are acted on by `g` first. Display uses cycle notation with each
//! cycle starting at its smallest point and cycles ordered by that point.

use crate::{Error, Result};
use std::fmt;

/// A permutation of `0..n`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation on `0..n`.
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from an image table.
    ///
    /// # Errors
    /// Returns [`Error::NotAPermutation`] if the table is not a bijection on
    /// `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::NotAPermutation {
                    reason: format!("image {img} out of range for domain size {n}"),
                });
            }
            if seen[img] {
                return Err(Error::NotAPermutation { reason: format!("image {img} repeats") });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation on `0..n` from disjoint cycles.
    ///
    /// Cycles need not be disjoint from singletons; points left unmentioned
    /// are fixed.
    ///
    /// # Errors
    /// Returns an error if a point repeats across the cycles or is out of
    /// range.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &p in cycle {
                if p >= n {
                    return Err(Error::IndexOutOfRange { index: p, size: n });
                }
                if used[p] {
                    return Err(Error::NotAPermutation {
                        reason: format!("point {p} appears in more than one cycle"),
                    });
                }
                used[p] = true;
            }
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    images[cycle[w]] = cycle[(w + 1) % cycle.len()];
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Domain size.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a single point.
    ///
    /// # Panics
    /// Panics if `point` is out of range.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// The underlying image table.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Left-to-right composition: the result maps `x` to `h(g(x))`.
    ///
    /// # Panics
    /// Panics if the degrees differ.
    pub fn compose(g: &Permutation, h: &Permutation) -> Permutation {
        assert_eq!(g.degree(), h.degree(), "composing permutations of different degree");
        Permutation { images: g.images.iter().map(|&x| h.images[x]).collect() }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images.iter().enumerate().filter(|&(x, &y)| x != y).map(|(x, _)| x).collect()
    }

    /// Whether every point is fixed.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Decomposition into cycles of length at least 2, each cycle starting
    /// at its smallest point, cycles ordered by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
