//! Exact tree containment by backtracking.
//!
//! Only the internal (non-leaf) vertices of the pattern are placed by the
//! search, the highest-degree one first and the rest in BFS order. Leaves
//! are assigned afterwards with a bipartite matching, which removes the
//! factorial blow-up from interchangeable leaves. Host vertices that are
//! twins (equal open or closed neighbourhoods) are interchangeable through
//! an automorphism fixing everything already placed, so only one unused
//! member of each twin class is tried per step.

use std::collections::HashMap;

use super::{Budget, EmbedError, Embedding, DEFAULT_BUDGET};
use crate::bits::VertexSet;
use crate::graph::{FamilySpec, Graph};

pub fn contains_tree(host: &Graph, pattern: &Graph) -> Result<Option<Embedding>, EmbedError> {
    contains_tree_with_budget(host, pattern, DEFAULT_BUDGET)
}

pub fn contains_family(host: &Graph, pattern: &FamilySpec) -> Result<Option<Embedding>, EmbedError> {
    contains_tree(host, &pattern.build()?)
}

pub fn contains_tree_with_budget(
    host: &Graph,
    pattern: &Graph,
    budget: u64,
) -> Result<Option<Embedding>, EmbedError> {
    if !pattern.is_tree() {
        return Err(EmbedError::NotATree);
    }
    let (t, n) = (pattern.n(), host.n());
    if t > n || pattern.edge_count() > host.edge_count() || pattern.max_degree() > host.max_degree() {
        return Ok(None);
    }
    match t {
        1 => return Ok(Some(Embedding { assignment: vec![0] })),
        2 => return Ok(host.edges().next().map(|(a, b)| Embedding { assignment: vec![a, b] })),
        _ => {}
    }
    let mut search = TreeSearch::new(host, pattern, budget);
    if search.place(0)? {
        let emb = Embedding {
            assignment: search.image.iter().map(|x| x.expect("all placed")).collect(),
        };
        debug_assert!(emb.validate(pattern, host));
        Ok(Some(emb))
    } else {
        Ok(None)
    }
}

/// Twin class of every host vertex. With `split` given, twins on opposite
/// sides of it are kept apart.
pub(crate) fn twin_classes_respecting(g: &Graph, split: Option<&VertexSet>) -> Vec<usize> {
    let n = g.n();
    let side = |v: usize| split.is_some_and(|s| s.contains(v));
    let mut open: HashMap<(&[u64], bool), Vec<usize>> = HashMap::new();
    for v in 0..n {
        open.entry((g.row(v), side(v))).or_default().push(v);
    }
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    let mut closed: HashMap<(Vec<u64>, bool), usize> = HashMap::new();
    for v in 0..n {
        if class[v] != usize::MAX {
            continue;
        }
        let members = &open[&(g.row(v), side(v))];
        if members.len() > 1 {
            for &w in members {
                class[w] = next;
            }
            next += 1;
        } else {
            let mut row = g.row(v).to_vec();
            row[v / 64] |= 1 << (v % 64);
            let id = *closed.entry((row, side(v))).or_insert_with(|| {
                next += 1;
                next - 1
            });
            class[v] = id;
        }
    }
    class
}

fn twin_classes(g: &Graph) -> Vec<usize> {
    twin_classes_respecting(g, None)
}

struct TreeSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    /// Internal pattern vertices in placement order with their parent's
    /// position in that order.
    order: Vec<(usize, Option<usize>)>,
    /// Leaves hanging off each pattern vertex.
    leaves: Vec<Vec<usize>>,
    class: Vec<usize>,
    image: Vec<Option<usize>>,
    unused: VertexSet,
    budget: Budget,
}

impl<'a> TreeSearch<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, budget: u64) -> Self {
        let t = pattern.n();
        let internal: Vec<bool> = (0..t).map(|p| pattern.degree(p) > 1).collect();
        let mut leaves = vec![Vec::new(); t];
        for p in (0..t).filter(|&p| !internal[p]) {
            let parent = pattern.neighbors(p).next().expect("tree on >= 3 vertices");
            leaves[parent].push(p);
        }
        let root = (0..t)
            .filter(|&p| internal[p])
            .max_by_key(|&p| (pattern.degree(p), std::cmp::Reverse(p)))
            .expect("tree on >= 3 vertices has an internal vertex");
        let mut order = vec![(root, None)];
        let mut seen = vec![false; t];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let (p, _) = order[head];
            let mut kids: Vec<usize> = pattern.neighbors(p).filter(|&c| internal[c] && !seen[c]).collect();
            kids.sort_by_key(|&c| (std::cmp::Reverse(pattern.degree(c)), c));
            for c in kids {
                seen[c] = true;
                order.push((c, Some(head)));
            }
            head += 1;
        }
        TreeSearch {
            host,
            pattern,
            order,
            leaves,
            class: twin_classes(host),
            image: vec![None; t],
            unused: VertexSet::full(host.n()),
            budget: Budget::new(budget),
        }
    }

    fn place(&mut self, pos: usize) -> Result<bool, EmbedError> {
        if pos == self.order.len() {
            return self.assign_leaves();
        }
        let (p, parent) = self.order[pos];
        let need = self.pattern.degree(p) - usize::from(parent.is_some());
        let mut candidates: Vec<usize> = match parent {
            None => (0..self.host.n()).collect(),
            Some(q) => {
                let h = self.image[self.order[q].0].expect("parent placed");
                self.host.neighbors(h).filter(|&v| self.unused.contains(v)).collect()
            }
        };
        candidates.retain(|&v| self.host.degree(v) >= self.pattern.degree(p));
        candidates.sort_by_key(|&v| (std::cmp::Reverse(self.host.degree(v)), v));
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if tried.contains(&self.class[v]) {
                continue;
            }
            tried.push(self.class[v]);
            self.budget.tick()?;
            self.unused.remove(v);
            if self.unused.intersection_len(self.host.row(v)) >= need {
                self.image[p] = Some(v);
                if self.place(pos + 1)? {
                    return Ok(true);
                }
                self.image[p] = None;
            }
            self.unused.insert(v);
        }
        Ok(false)
    }

    /// Kuhn's augmenting paths: every leaf needs a distinct unused neighbour
    /// of its parent's image.
    fn assign_leaves(&mut self) -> Result<bool, EmbedError> {
        self.budget.tick()?;
        let slots: Vec<(usize, usize)> = self
            .leaves
            .iter()
            .enumerate()
            .flat_map(|(p, ls)| ls.iter().map(move |&l| (l, p)))
            .collect();
        let allowed: Vec<Vec<usize>> = slots
            .iter()
            .map(|&(_, p)| {
                let h = self.image[p].expect("internal vertices placed");
                self.host.neighbors(h).filter(|&v| self.unused.contains(v)).collect()
            })
            .collect();
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for s in 0..slots.len() {
            let mut visited = vec![false; slots.len()];
            if !augment(s, &allowed, &mut owner, &mut visited) {
                return Ok(false);
            }
        }
        for (&v, &s) in &owner {
            self.image[slots[s].0] = Some(v);
        }
        Ok(true)
    }
}

fn augment(
    s: usize,
    allowed: &[Vec<usize>],
    owner: &mut HashMap<usize, usize>,
    visited: &mut [bool],
) -> bool {
    if visited[s] {
        return false;
    }
    visited[s] = true;
    for &v in &allowed[s] {
        match owner.get(&v).copied() {
            None => {
                owner.insert(v, s);
                return true;
            }
            Some(o) => {
                if augment(o, allowed, owner, visited) {
                    owner.insert(v, s);
                    return true;
                }
            }
        }
    }
    false
}

/// Minimum vertex cover of a tree (or forest), by the usual leaf-up DP.
pub fn min_vertex_cover_tree(tree: &Graph) -> Result<usize, EmbedError> {
    let n = tree.n();
    if n == 0 || tree.edge_count() + tree.components().len() != n {
        return Err(EmbedError::NotATree);
    }
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        order.push(r);
        let mut i = order.len() - 1;
        while i < order.len() {
            let v = order[i];
            for w in tree.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    // (in cover, not in cover)
    let mut dp = vec![(1usize, 0usize); n];
    let mut total = 0;
    for &v in order.iter().rev() {
        let (take, skip) = dp[v];
        if parent[v] == usize::MAX {
            total += take.min(skip);
        } else {
            let p = parent[v];
            dp[p].0 += take.min(skip);
            dp[p].1 += take;
        }
    }
    Ok(total)
}

/// Whether the tree embeds in `S_{n,k}` for every `n ≥ |T|`: the tree's
/// smaller side of some vertex cover goes into the clique.
pub fn fits_in_s(tree: &FamilySpec, k: usize) -> Result<bool, EmbedError> {
    if k < 1 {
        return Err(EmbedError::InvalidParameters("k must be at least 1".into()));
    }
    let g = tree.build()?;
    if !g.is_tree() {
        return Err(EmbedError::NotATree);
    }
    Ok(min_vertex_cover_tree(&g)? <= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(f: FamilySpec) -> Graph {
        f.build().unwrap()
    }

    #[test]
    fn extremal_hosts_exclude_long_paths() {
        let s20 = build(FamilySpec::CompleteSplit { n: 20, k: 2 });
        assert!(contains_tree(&s20, &build(FamilySpec::Path(5))).unwrap().is_some());
        assert!(contains_tree(&s20, &build(FamilySpec::Path(6))).unwrap().is_none());
        let sp = build(FamilySpec::CompleteSplitPlus { n: 20, k: 2 });
        assert!(contains_tree(&sp, &build(FamilySpec::Path(6))).unwrap().is_some());
        assert!(contains_tree(&sp, &build(FamilySpec::Path(7))).unwrap().is_none());
    }

    #[test]
    fn broom_in_plus_host_but_not_in_split_host() {
        let broom = build(FamilySpec::Broom { s: 2, t: 5 });
        let sp = build(FamilySpec::CompleteSplitPlus { n: 10, k: 2 });
        let e = contains_tree(&sp, &broom).unwrap().unwrap();
        assert!(e.validate(&broom, &sp));
        let s30 = build(FamilySpec::CompleteSplit { n: 30, k: 2 });
        assert!(contains_tree(&s30, &broom).unwrap().is_none());
    }

    #[test]
    fn errors_and_trivial_patterns() {
        assert_eq!(
            contains_tree(&Graph::complete(4), &Graph::complete(3)),
            Err(EmbedError::NotATree)
        );
        assert!(contains_tree(&Graph::empty(3), &Graph::complete(1)).unwrap().is_some());
        assert!(contains_tree(&Graph::empty(3), &Graph::complete(2)).unwrap().is_none());
        assert!(contains_tree(&Graph::complete(3), &build(FamilySpec::Path(4))).unwrap().is_none());
        let big = build(FamilySpec::CompleteSplit { n: 200, k: 3 });
        let p = build(FamilySpec::Path(9));
        assert!(matches!(
            contains_tree_with_budget(&big, &p, 5),
            Err(EmbedError::BudgetExceeded { budget: 5 })
        ));
    }

    #[test]
    fn twin_classes_on_split_graph() {
        let c = twin_classes(&build(FamilySpec::CompleteSplit { n: 6, k: 2 }));
        assert_eq!(c[0], c[1]);
        assert!(c[2..].iter().all(|&x| x == c[2]));
        assert_ne!(c[0], c[2]);
    }

    #[test]
    fn vertex_cover_examples() {
        assert!(!fits_in_s(&FamilySpec::Path(6), 2).unwrap());
        assert!(fits_in_s(&FamilySpec::Path(5), 2).unwrap());
        assert!(fits_in_s(&FamilySpec::Broom { s: 3, t: 4 }, 2).unwrap());
        for s in 1..20 {
            assert!(fits_in_s(&FamilySpec::Star(s), 1).unwrap());
        }
        assert_eq!(min_vertex_cover_tree(&build(FamilySpec::Path(6))).unwrap(), 3);
        assert!(fits_in_s(&FamilySpec::CompleteSplit { n: 4, k: 2 }, 2).is_err());
    }
}
