//! Isomorph-free enumeration of small graphs and seeded random samplers.
//!
//! Level `n` is built from level `n − 1` by adding a vertex joined to each
//! subset of the old vertices and keeping one graph per canonical key.
//! Levels are cached for the life of the process, and the stream is the
//! sorted key order, which makes indices stable resumption tokens.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{canonical_key, CanonicalKey, FamilySpec, Graph, GraphError};

/// Largest order enumerated by [`all_graphs`].
pub const EXHAUSTIVE_CAP: usize = 8;
/// Largest order reachable through [`all_graphs_extended`].
pub const EXTENDED_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Level = Arc<Vec<CanonicalKey>>;

fn cache() -> &'static Mutex<HashMap<usize, Level>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Level>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn level(n: usize) -> Level {
    if let Some(l) = cache().lock().expect("cache lock").get(&n) {
        return l.clone();
    }
    let keys: Vec<CanonicalKey> = if n == 0 {
        vec![canonical_key(&Graph::empty(0)).expect("order 0")]
    } else {
        let prev = level(n - 1);
        let mut set = BTreeSet::new();
        for key in prev.iter() {
            let base = key.to_graph();
            for mask in 0u32..1 << (n - 1) {
                let mut g = Graph::empty(n);
                for (u, v) in base.edges() {
                    g.insert_edge(u, v);
                }
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        g.insert_edge(u, n - 1);
                    }
                }
                set.insert(canonical_key(&g).expect("within cap"));
            }
        }
        set.into_iter().collect()
    };
    let keys = Arc::new(keys);
    cache().lock().expect("cache lock").insert(n, keys.clone());
    keys
}

/// Deterministic, resumable stream over one isomorphism class
/// representative per graph of order `n`.
#[derive(Debug, Clone)]
pub struct EnumerationCursor {
    n: usize,
    connected_only: bool,
    keys: Level,
    /// Index of the next candidate in the unfiltered canonical stream.
    token: usize,
    end: usize,
    emitted: usize,
}

impl EnumerationCursor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connected_only(&self) -> bool {
        self.connected_only
    }

    /// Resumption token: pass to [`EnumerationCursor::resume`].
    pub fn token(&self) -> usize {
        self.token
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Size of the unfiltered canonical stream.
    pub fn stream_len(&self) -> usize {
        self.keys.len()
    }

    /// Continue from a token taken from a cursor with the same parameters.
    pub fn resume(mut self, token: usize) -> Self {
        self.token = token.min(self.end);
        self
    }

    /// Restrict to the `shard`-th of `shards` contiguous index ranges.
    pub fn shard(mut self, shard: usize, shards: usize) -> Result<Self, EnumError> {
        if shards == 0 || shard >= shards {
            return Err(EnumError::InvalidParameters(format!("shard {shard} of {shards}")));
        }
        let len = self.keys.len();
        self.token = len * shard / shards;
        self.end = len * (shard + 1) / shards;
        Ok(self)
    }
}

impl Iterator for EnumerationCursor {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.token < self.end {
            let g = self.keys[self.token].to_graph();
            self.token += 1;
            if !self.connected_only || g.is_connected() {
                self.emitted += 1;
                return Some(g);
            }
        }
        None
    }
}

pub fn all_graphs(n: usize, connected_only: bool) -> Result<EnumerationCursor, EnumError> {
    enumerate_up_to(n, connected_only, EXHAUSTIVE_CAP)
}

/// As [`all_graphs`] but admitting `n = 9` (about 275 thousand classes).
pub fn all_graphs_extended(n: usize, connected_only: bool) -> Result<EnumerationCursor, EnumError> {
    enumerate_up_to(n, connected_only, EXTENDED_CAP)
}

fn enumerate_up_to(n: usize, connected_only: bool, cap: usize) -> Result<EnumerationCursor, EnumError> {
    if n > cap {
        return Err(EnumError::CapExceeded { n, cap });
    }
    let keys = level(n);
    Ok(EnumerationCursor {
        n,
        connected_only,
        end: keys.len(),
        keys,
        token: 0,
        emitted: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomModel {
    /// Uniform over graphs with exactly this many edges.
    Edges(usize),
    /// Each pair independently with this probability.
    Probability(f64),
}

fn pair_from_index(n: usize, mut idx: usize) -> (usize, usize) {
    // Pairs in lexicographic order (0,1), (0,2), ..., (n−2,n−1).
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

pub fn random_graph(n: usize, model: RandomModel, seed: u64) -> Result<Graph, EnumError> {
    crate::graph::check_order(n)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    match model {
        RandomModel::Edges(m) => {
            if m > pairs {
                return Err(EnumError::InvalidParameters(format!("{m} edges exceed {pairs} pairs")));
            }
            let mut picked = index::sample(&mut rng, pairs, m).into_vec();
            picked.sort_unstable();
            for i in picked {
                let (u, v) = pair_from_index(n, i);
                g.insert_edge(u, v);
            }
        }
        RandomModel::Probability(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(EnumError::InvalidParameters(format!("probability {p} outside [0, 1]")));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.insert_edge(u, v);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Deletes `remove` uniformly chosen edges of the base graph, then inserts
/// `add` uniformly chosen non-edges of the result.
pub fn perturb_extremal(base: &FamilySpec, add: usize, remove: usize, seed: u64) -> Result<Graph, EnumError> {
    if !matches!(base, FamilySpec::CompleteSplit { .. } | FamilySpec::CompleteSplitPlus { .. }) {
        return Err(EnumError::InvalidParameters(format!("{base} is not an extremal family")));
    }
    let mut g = base.build()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if remove > edges.len() {
        return Err(EnumError::InvalidParameters(format!("cannot remove {remove} of {} edges", edges.len())));
    }
    let mut picked = index::sample(&mut rng, edges.len(), remove).into_vec();
    picked.sort_unstable();
    for i in picked {
        g.delete_edge(edges[i].0, edges[i].1);
    }
    let non_edges = g.non_edges();
    if add > non_edges.len() {
        return Err(EnumError::InvalidParameters(format!(
            "cannot add {add} edges, only {} non-edges",
            non_edges.len()
        )));
    }
    let mut picked = index::sample(&mut rng, non_edges.len(), add).into_vec();
    picked.sort_unstable();
    for i in picked {
        g.insert_edge(non_edges[i].0, non_edges[i].1);
    }
    Ok(g)
}
