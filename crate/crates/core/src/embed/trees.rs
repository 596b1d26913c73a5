//! Free trees of a given order.
//!
//! Rooted trees are generated as level sequences (Beyer–Hedetniemi
//! successor rule), then reduced to free trees by the parenthesis code of
//! the tree rooted at its centre (the smaller code for bicentral trees).

use std::collections::BTreeMap;

use super::EmbedError;
use crate::graph::Graph;

pub const MAX_TREE_ORDER: usize = 12;

/// One representative per isomorphism class, sorted by [`free_tree_code`].
pub fn all_trees_of_order(t: usize) -> Result<Vec<Graph>, EmbedError> {
    if t == 0 {
        return Err(EmbedError::InvalidParameters("tree order must be positive".into()));
    }
    if t > MAX_TREE_ORDER {
        return Err(EmbedError::CapExceeded { n: t, cap: MAX_TREE_ORDER });
    }
    let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
    let mut levels: Vec<usize> = (1..=t).collect();
    loop {
        let g = from_levels(&levels);
        seen.entry(free_tree_code(&g).expect("level sequence gives a tree")).or_insert(g);
        let Some(p) = (1..t).rev().find(|&i| levels[i] > 2) else { break };
        let q = (0..p).rev().find(|&i| levels[i] == levels[p] - 1).expect("parent level exists");
        for i in p..t {
            levels[i] = levels[i - (p - q)];
        }
    }
    Ok(seen.into_values().collect())
}

fn from_levels(levels: &[usize]) -> Graph {
    let mut g = Graph::empty(levels.len());
    for i in 1..levels.len() {
        let parent = (0..i).rev().find(|&j| levels[j] == levels[i] - 1).expect("parent");
        g.insert_edge(parent, i);
    }
    g
}

/// Isomorphism invariant of a free tree that is complete (equal codes iff
/// isomorphic trees).
pub fn free_tree_code(tree: &Graph) -> Result<String, EmbedError> {
    if !tree.is_tree() {
        return Err(EmbedError::NotATree);
    }
    let centres = centres(tree);
    Ok(centres
        .iter()
        .map(|&c| rooted_code(tree, c, usize::MAX))
        .min()
        .expect("a tree has a centre"))
}

fn centres(tree: &Graph) -> Vec<usize> {
    let n = tree.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg = tree.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for w in tree.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(tree: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = tree
        .neighbors(v)
        .filter(|&w| w != parent)
        .map(|w| rooted_code(tree, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=9).map(|t| all_trees_of_order(t).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
        assert!(all_trees_of_order(13).is_err());
        assert!(all_trees_of_order(0).is_err());
    }

    #[test]
    fn outputs_are_trees() {
        for g in all_trees_of_order(7).unwrap() {
            assert!(g.is_tree());
            assert_eq!(g.n(), 7);
        }
    }

    #[test]
    fn centres_of_paths() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(centres(&p4), vec![1, 2]);
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(centres(&p5), vec![2]);
    }
}
