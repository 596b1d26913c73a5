//! Canonical keys for small graphs.
//!
//! The key is the lexicographically smallest column-major upper-triangle
//! adjacency string over all vertex orders that respect a colour
//! refinement of the degree partition. Refinement only depends on the
//! isomorphism class, so restricting the minimum to refined orders keeps
//! the key invariant while pruning most of the `n!` labellings.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::Graph;

/// Largest order accepted by [`canonical_key`].
pub const DEFAULT_CANON_CAP: usize = 10;

// Column bit masks are u32.
const HARD_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("graph order {n} exceeds the canonical-form cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Identifies the isomorphism class of a graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.n
    }

    fn bit(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (63 - idx % 64) & 1 == 1
    }

    /// The canonically labelled representative of the class.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut idx = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bit(idx) {
                    g.insert_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for w in &self.bits {
            write!(f, "{w:016x}")?;
        }
        Ok(())
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, CanonError> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP).map(|(k, _)| k)
}

/// Canonical key plus the relabelling `perm` (old vertex `v` goes to
/// `perm[v]`) such that `g.permuted(&perm) == key.to_graph()`.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalKey, Vec<usize>), CanonError> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

pub(crate) fn canonical_form_with_cap(
    g: &Graph,
    cap: usize,
) -> Result<(CanonicalKey, Vec<usize>), CanonError> {
    let n = g.n();
    if n > cap.min(HARD_CAP) {
        return Err(CanonError::CapExceeded { n, cap: cap.min(HARD_CAP) });
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).fold(0u32, |m, v| m | 1 << v))
        .collect();
    let colour = refine(&adj);
    let mut cells: Vec<usize> = colour.clone();
    cells.sort_unstable();

    let mut search = Search {
        adj: &adj,
        colour: &colour,
        cells: &cells,
        cur_cols: vec![0; n],
        cur_order: vec![0; n],
        best_cols: Vec::new(),
        best_order: Vec::new(),
    };
    search.descend(0, 0);

    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
    let mut idx = 0;
    for (j, &col) in search.best_cols.iter().enumerate() {
        for i in 0..j {
            if col >> (j - 1 - i) & 1 == 1 {
                bits[idx / 64] |= 1 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    Ok((CanonicalKey { n, bits }, perm))
}

/// Iterated 1-dimensional colour refinement starting from degrees. Colours
/// are ranks of sorted signatures, hence labelling independent.
fn refine(adj: &[u32]) -> Vec<usize> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
    let mut classes = count_distinct(&colour);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("signature present"))
            .collect();
        let next_classes = sorted.len();
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

struct Search<'a> {
    adj: &'a [u32],
    colour: &'a [usize],
    cells: &'a [usize],
    cur_cols: Vec<u32>,
    cur_order: Vec<usize>,
    best_cols: Vec<u32>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize, used: u32) {
        let n = self.adj.len();
        if pos == n {
            if self.best_cols.is_empty() || self.cur_cols < self.best_cols {
                self.best_cols = self.cur_cols.clone();
                self.best_order = self.cur_order.clone();
            }
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 1 || self.colour[v] != self.cells[pos] {
                continue;
            }
            // Column `pos`: adjacency to the already placed vertices, first
            // placed vertex in the most significant bit.
            let mut col = 0u32;
            for (i, &w) in self.cur_order[..pos].iter().enumerate() {
                if self.adj[v] >> w & 1 == 1 {
                    col |= 1 << (pos - 1 - i);
                }
            }
            self.cur_cols[pos] = col;
            if !self.best_cols.is_empty()
                && self.cur_cols[..=pos].cmp(&self.best_cols[..=pos]) == Ordering::Greater
            {
                continue;
            }
            self.cur_order[pos] = v;
            self.descend(pos + 1, used | 1 << v);
        }
    }
}
