//! Exact longest-path data by dynamic programming over vertex subsets.

use serde::Serialize;

use super::EmbedError;
use crate::graph::Graph;

/// Largest order handled by [`longest_path_stats`].
pub const DEFAULT_PATH_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathStats {
    /// `p[v]`: edges on a longest path starting at `v`.
    pub p: Vec<usize>,
    /// Vertices on a longest path of the graph.
    pub longest_order: usize,
    /// One longest path, in order.
    pub witness: Vec<usize>,
    /// Vertices of `witness`, sorted.
    pub x: Vec<usize>,
    /// The remaining vertices.
    pub y: Vec<usize>,
    /// `(v, |N(v) ∩ X|)` for every `v` in `y`.
    pub s: Vec<(usize, usize)>,
}

pub fn longest_path_stats(g: &Graph) -> Result<PathStats, EmbedError> {
    longest_path_stats_with_cap(g, DEFAULT_PATH_CAP)
}

pub fn longest_path_stats_with_cap(g: &Graph, cap: usize) -> Result<PathStats, EmbedError> {
    let n = g.n();
    let cap = cap.min(24);
    if n > cap {
        return Err(EmbedError::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(PathStats {
            p: Vec::new(),
            longest_order: 0,
            witness: Vec::new(),
            x: Vec::new(),
            y: Vec::new(),
            s: Vec::new(),
        });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w)).collect();
    // ends[mask]: vertices at which some path with vertex set `mask` ends.
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut p = vec![0usize; n];
    let mut best = (1u32, 0usize);
    for mask in 1..(1usize << n) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        let len = mask.count_ones();
        if len > best.0 {
            best = (len, mask);
        }
        let mut bits = e;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            p[w] = p[w].max(len as usize - 1);
            let mut ext = adj[w] & !(mask as u32);
            while ext != 0 {
                let x = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | 1 << x] |= 1 << x;
            }
        }
    }
    if best.1 == 0 {
        best.1 = 1;
    }
    // Walk back from one end of the best set.
    let mut mask = best.1;
    let mut cur = ends[mask].trailing_zeros() as usize;
    let mut witness = vec![cur];
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << cur);
        let prev = (0..n)
            .find(|&w| ends[rest] >> w & 1 == 1 && adj[cur] >> w & 1 == 1)
            .expect("path set has a predecessor");
        witness.push(prev);
        mask = rest;
        cur = prev;
    }
    let mut x = witness.clone();
    x.sort_unstable();
    let in_x: Vec<bool> = (0..n).map(|v| x.binary_search(&v).is_ok()).collect();
    let y: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let s = y.iter().map(|&v| (v, g.neighbors(v).filter(|&w| in_x[w]).count())).collect();
    Ok(PathStats {
        p,
        longest_order: witness.len(),
        witness,
        x,
        y,
        s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    /// Plain DFS over simple paths.
    fn dfs_longest_from(g: &Graph, v: usize, used: &mut Vec<bool>) -> usize {
        used[v] = true;
        let mut best = 0;
        for w in g.neighbors(v) {
            if !used[w] {
                best = best.max(1 + dfs_longest_from(g, w, used));
            }
        }
        used[v] = false;
        best
    }

    #[test]
    fn cycle_and_single_vertex() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let st = longest_path_stats(&c5).unwrap();
        assert_eq!(st.p, vec![4; 5]);
        assert_eq!(st.longest_order, 5);
        assert!(st.y.is_empty());
        let k1 = longest_path_stats(&Graph::empty(1)).unwrap();
        assert_eq!((k1.p.clone(), k1.longest_order), (vec![0], 1));
    }

    #[test]
    fn complete_split_longest_path() {
        let g = FamilySpec::CompleteSplit { n: 8, k: 2 }.build().unwrap();
        let st = longest_path_stats(&g).unwrap();
        assert_eq!(st.longest_order, 5);
        for w in st.witness.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        assert_eq!(st.y.len(), 3);
        // Outside vertices see exactly the two clique vertices.
        assert!(st.s.iter().all(|&(_, c)| c == 2));
        let mut used = vec![false; 8];
        for v in 0..8 {
            assert_eq!(st.p[v], dfs_longest_from(&g, v, &mut used));
        }
    }

    #[test]
    fn agrees_with_dfs_on_broom_and_cap() {
        let g = FamilySpec::Broom { s: 3, t: 6 }.build().unwrap();
        let st = longest_path_stats(&g).unwrap();
        let mut used = vec![false; g.n()];
        for v in 0..g.n() {
            assert_eq!(st.p[v], dfs_longest_from(&g, v, &mut used));
        }
        assert_eq!(st.longest_order, 1 + st.p.iter().max().unwrap());
        assert!(matches!(
            longest_path_stats(&Graph::empty(21)),
            Err(EmbedError::CapExceeded { n: 21, cap: 20 })
        ));
    }
}
