//! Vertex-disjoint paths of prescribed orders, optionally with one end of
//! every path in an anchor set.

use super::{tree::twin_classes_respecting, Budget, EmbedError, DEFAULT_BUDGET};
use crate::bits::VertexSet;
use crate::graph::Graph;

/// Paths are returned in the order of `lengths`; with an anchor set the
/// first vertex of each path is the anchored end.
pub fn find_linear_forest(
    host: &Graph,
    lengths: &[usize],
    anchor: Option<&[usize]>,
) -> Result<Option<Vec<Vec<usize>>>, EmbedError> {
    find_linear_forest_with_budget(host, lengths, anchor, DEFAULT_BUDGET)
}

pub fn find_linear_forest_with_budget(
    host: &Graph,
    lengths: &[usize],
    anchor: Option<&[usize]>,
    budget: u64,
) -> Result<Option<Vec<Vec<usize>>>, EmbedError> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(EmbedError::InvalidParameters("path orders must be non-empty and positive".into()));
    }
    let n = host.n();
    let anchor_set = match anchor {
        Some(a) => {
            if let Some(&v) = a.iter().find(|&&v| v >= n) {
                return Err(EmbedError::Graph(crate::graph::GraphError::VertexOutOfRange { vertex: v, n }));
            }
            Some(VertexSet::from_iter(n, a.iter().copied()))
        }
        None => None,
    };
    if lengths.iter().sum::<usize>() > n {
        return Ok(None);
    }
    if let Some(a) = &anchor_set {
        if lengths.len() > a.len() {
            return Ok(None);
        }
    }
    let mut by_len: Vec<usize> = (0..lengths.len()).collect();
    by_len.sort_by_key(|&i| (std::cmp::Reverse(lengths[i]), i));
    let mut s = ForestSearch {
        host,
        targets: by_len.iter().map(|&i| lengths[i]).collect(),
        class: twin_classes_respecting(host, anchor_set.as_ref()),
        anchor: anchor_set,
        unused: VertexSet::full(n),
        paths: Vec::new(),
        budget: Budget::new(budget),
    };
    if !s.start_next()? {
        return Ok(None);
    }
    let mut out = vec![Vec::new(); lengths.len()];
    for (slot, path) in by_len.into_iter().zip(s.paths) {
        out[slot] = path;
    }
    Ok(Some(out))
}

struct ForestSearch<'a> {
    host: &'a Graph,
    targets: Vec<usize>,
    class: Vec<usize>,
    anchor: Option<VertexSet>,
    unused: VertexSet,
    paths: Vec<Vec<usize>>,
    budget: Budget,
}

impl ForestSearch<'_> {
    fn remaining(&self) -> usize {
        let done = self.paths.len();
        let partial = self.paths.last().map_or(0, |p| p.len());
        let open = if done > 0 { self.targets[done - 1] - partial } else { 0 };
        open + self.targets[done..].iter().sum::<usize>()
    }

    fn start_next(&mut self) -> Result<bool, EmbedError> {
        let i = self.paths.len();
        if i == self.targets.len() {
            return Ok(true);
        }
        let mut candidates: Vec<usize> = match &self.anchor {
            Some(a) => a.iter().filter(|&v| self.unused.contains(v)).collect(),
            None => self.unused.iter().collect(),
        };
        if self.targets[i] > 1 {
            candidates.retain(|&v| self.unused.intersection_len(self.host.row(v)) > 0);
        }
        let mut tried = Vec::new();
        for v in candidates {
            if tried.contains(&self.class[v]) {
                continue;
            }
            tried.push(self.class[v]);
            self.budget.tick()?;
            self.unused.remove(v);
            self.paths.push(vec![v]);
            if self.remaining() <= self.unused.len() && self.grow()? {
                return Ok(true);
            }
            self.paths.pop();
            self.unused.insert(v);
        }
        Ok(false)
    }

    fn grow(&mut self) -> Result<bool, EmbedError> {
        let i = self.paths.len() - 1;
        let path = &self.paths[i];
        if path.len() == self.targets[i] {
            return self.start_next();
        }
        let last = *path.last().expect("started path");
        let next: Vec<usize> = self.host.neighbors(last).filter(|&w| self.unused.contains(w)).collect();
        let mut tried = Vec::new();
        for w in next {
            if tried.contains(&self.class[w]) {
                continue;
            }
            tried.push(self.class[w]);
            self.budget.tick()?;
            self.unused.remove(w);
            self.paths[i].push(w);
            if self.grow()? {
                return Ok(true);
            }
            self.paths[i].pop();
            self.unused.insert(w);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn check(host: &Graph, lengths: &[usize], paths: &[Vec<usize>], anchor: Option<&[usize]>) {
        let mut seen = std::collections::HashSet::new();
        for (p, &len) in paths.iter().zip(lengths) {
            assert_eq!(p.len(), len);
            for w in p.windows(2) {
                assert!(host.has_edge(w[0], w[1]));
            }
            for &v in p {
                assert!(seen.insert(v));
            }
            if let Some(a) = anchor {
                assert!(a.contains(&p[0]));
            }
        }
    }

    #[test]
    fn complete_and_short_hosts() {
        let k6 = Graph::complete(6);
        let f = find_linear_forest(&k6, &[3, 3], None).unwrap().unwrap();
        check(&k6, &[3, 3], &f, None);
        let p5 = FamilySpec::Path(5).build().unwrap();
        assert_eq!(find_linear_forest(&p5, &[3, 3], None).unwrap(), None);
        let f = find_linear_forest(&p5, &[2, 3], None).unwrap().unwrap();
        check(&p5, &[2, 3], &f, None);
    }

    #[test]
    fn anchored_paths() {
        // P5 = 0-1-2-3-4 anchored at {2}: a single P3 starting at 2 exists,
        // two anchored paths cannot.
        let p5 = FamilySpec::Path(5).build().unwrap();
        let f = find_linear_forest(&p5, &[3], Some(&[2])).unwrap().unwrap();
        check(&p5, &[3], &f, Some(&[2]));
        assert_eq!(find_linear_forest(&p5, &[3, 1], Some(&[2])).unwrap(), None);
        assert_eq!(find_linear_forest(&p5, &[4], Some(&[2])).unwrap(), None);
        let f = find_linear_forest(&p5, &[4], Some(&[1])).unwrap().unwrap();
        assert_eq!(f, vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn invalid_requests() {
        let k3 = Graph::complete(3);
        assert!(find_linear_forest(&k3, &[], None).is_err());
        assert!(find_linear_forest(&k3, &[0], None).is_err());
        assert!(find_linear_forest(&k3, &[1], Some(&[7])).is_err());
    }
}
