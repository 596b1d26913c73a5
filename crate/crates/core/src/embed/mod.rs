//! Subgraph (not induced) containment for trees and linear forests, exact
//! longest-path statistics, free-tree generation and a constructive spider
//! embedder that follows the walk-sum case analysis.

mod forest;
mod paths;
mod spider;
mod tree;
mod trees;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use forest::{find_linear_forest, find_linear_forest_with_budget};
pub use paths::{longest_path_stats, longest_path_stats_with_cap, PathStats, DEFAULT_PATH_CAP};
pub use spider::{proof_guided_spider_embed, SpiderBranch, SpiderTrace};
pub use tree::{contains_family, contains_tree, contains_tree_with_budget, fits_in_s, min_vertex_cover_tree};
pub use trees::{all_trees_of_order, free_tree_code, MAX_TREE_ORDER};

/// Default number of search nodes before a search gives up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("pattern is not a tree")]
    NotATree,
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("exact fallback search exhausted its budget of {budget} nodes")]
    FallbackExhausted { budget: u64 },
    #[error("order {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `assignment[p]` is the host image of pattern vertex `p`.
    pub assignment: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn validate(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.assignment.len() != pattern.n() {
            return false;
        }
        let mut seen = vec![false; host.n()];
        for &h in &self.assignment {
            if h >= host.n() || seen[h] {
                return false;
            }
            seen[h] = true;
        }
        pattern
            .edges()
            .all(|(a, b)| host.has_edge(self.assignment[a], self.assignment[b]))
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.assignment.len()))?;
        for (p, h) in self.assignment.iter().enumerate() {
            seq.serialize_element(&(p, *h))?;
        }
        seq.end()
    }
}

/// Node counter shared by the backtracking searches.
#[derive(Debug)]
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<(), EmbedError> {
        self.used += 1;
        if self.used > self.limit {
            Err(EmbedError::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}
