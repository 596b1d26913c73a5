//! Named graph families and their constructors.
//!
//! Vertex numbering is fixed so that callers can refer to specific roles:
//!
//! * `CompleteSplit(n, k)`: vertices `0..k` form the clique, `k..n` the
//!   independent set.
//! * `CompleteSplitPlus(n, k)`: as above plus the edge `k`–`k+1`.
//! * `Path(t)`: `0-1-…-(t-1)`.
//! * `Star(s)`: centre `0`, leaves `1..=s`.
//! * `Spider(legs)`: centre `0`, then each leg's vertices in order,
//!   nearest to the centre first.
//! * `Broom(s, t)` and `GeneralizedBroom(s, t, l)`: path `0..t`, with the
//!   `s` pendant vertices `t..t+s` attached to path vertex `l-1`
//!   (`l = 1` for a plain broom, so its centre is vertex `0`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_order, Graph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// `K_k ∨ complement(K_{n-k})`.
    CompleteSplit { n: usize, k: usize },
    /// `CompleteSplit` with one edge inside the independent set.
    CompleteSplitPlus { n: usize, k: usize },
    Path(usize),
    Star(usize),
    Complete(usize),
    Spider(Vec<usize>),
    Broom { s: usize, t: usize },
    GeneralizedBroom { s: usize, t: usize, l: usize },
    Explicit { n: usize, edges: Vec<(usize, usize)> },
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidFamily(msg.into())
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            FamilySpec::CompleteSplit { n, k } => {
                if *k < 1 || k + 1 > *n {
                    return Err(invalid(format!("S_{{n,k}} needs 1 <= k <= n-1, got n={n}, k={k}")));
                }
            }
            FamilySpec::CompleteSplitPlus { n, k } => {
                if *k < 1 || k + 2 > *n {
                    return Err(invalid(format!("S+_{{n,k}} needs 1 <= k <= n-2, got n={n}, k={k}")));
                }
            }
            FamilySpec::Path(t) => {
                if *t < 1 {
                    return Err(invalid("path needs at least one vertex"));
                }
            }
            FamilySpec::Star(_) => {}
            FamilySpec::Complete(n) => {
                if *n < 1 {
                    return Err(invalid("complete graph needs at least one vertex"));
                }
            }
            FamilySpec::Spider(legs) => {
                if legs.is_empty() {
                    return Err(invalid("spider needs at least one leg"));
                }
                if legs.contains(&0) {
                    return Err(invalid("spider legs must have length >= 1"));
                }
            }
            FamilySpec::Broom { s, t } => {
                if *s < 1 || *t < 1 {
                    return Err(invalid(format!("broom needs s >= 1 and t >= 1, got s={s}, t={t}")));
                }
            }
            FamilySpec::GeneralizedBroom { s, t, l } => {
                if *s < 1 || *l < 1 || l > t {
                    return Err(invalid(format!(
                        "generalized broom needs s >= 1 and 1 <= l <= t, got s={s}, t={t}, l={l}"
                    )));
                }
            }
            FamilySpec::Explicit { .. } => {}
        }
        Ok(())
    }

    /// Number of vertices of the constructed graph.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::CompleteSplit { n, .. } | FamilySpec::CompleteSplitPlus { n, .. } => *n,
            FamilySpec::Path(t) => *t,
            FamilySpec::Star(s) => s + 1,
            FamilySpec::Complete(n) => *n,
            FamilySpec::Spider(legs) => 1 + legs.iter().sum::<usize>(),
            FamilySpec::Broom { s, t } | FamilySpec::GeneralizedBroom { s, t, .. } => s + t,
            FamilySpec::Explicit { n, .. } => *n,
        }
    }

    /// Leg lengths when the family member is a spider (centre plus legs),
    /// with zero-length legs dropped. Paths are reported with a single leg.
    pub fn spider_legs(&self) -> Option<Vec<usize>> {
        let mut legs = match self {
            FamilySpec::Spider(legs) => legs.clone(),
            FamilySpec::Star(s) => vec![1; *s],
            FamilySpec::Path(t) => vec![t.saturating_sub(1)],
            FamilySpec::Broom { s, t } => {
                let mut v = vec![1; *s];
                v.push(t - 1);
                v
            }
            FamilySpec::GeneralizedBroom { s, t, l } => {
                let mut v = vec![1; *s];
                v.push(l - 1);
                v.push(t - l);
                v
            }
            _ => return None,
        };
        legs.retain(|&t| t > 0);
        Some(legs)
    }

    /// Construct the graph described by this spec.
    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        check_order(self.order())?;
        let g = match self {
            FamilySpec::CompleteSplit { n, k } => complete_split(*n, *k),
            FamilySpec::CompleteSplitPlus { n, k } => {
                let mut g = complete_split(*n, *k);
                g.insert_edge(*k, k + 1);
                g
            }
            FamilySpec::Path(t) => {
                let mut g = Graph::empty(*t);
                for i in 1..*t {
                    g.insert_edge(i - 1, i);
                }
                g
            }
            FamilySpec::Star(s) => {
                let mut g = Graph::empty(s + 1);
                for i in 1..=*s {
                    g.insert_edge(0, i);
                }
                g
            }
            FamilySpec::Complete(n) => Graph::complete(*n),
            FamilySpec::Spider(legs) => {
                let mut g = Graph::empty(self.order());
                let mut next = 1;
                for &len in legs {
                    let mut prev = 0;
                    for _ in 0..len {
                        g.insert_edge(prev, next);
                        prev = next;
                        next += 1;
                    }
                }
                g
            }
            FamilySpec::Broom { s, t } => generalized_broom(*s, *t, 1),
            FamilySpec::GeneralizedBroom { s, t, l } => generalized_broom(*s, *t, *l),
            FamilySpec::Explicit { n, edges } => Graph::from_edges(*n, edges)?,
        };
        Ok(g)
    }
}

/// Edge-free bulk construction of `K_k ∨ complement(K_{n-k})`.
fn complete_split(n: usize, k: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..k {
        for v in u + 1..n {
            g.insert_edge(u, v);
        }
    }
    g
}

fn generalized_broom(s: usize, t: usize, l: usize) -> Graph {
    let mut g = Graph::empty(s + t);
    for i in 1..t {
        g.insert_edge(i - 1, i);
    }
    for j in 0..s {
        g.insert_edge(l - 1, t + j);
    }
    g
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(v: &[usize]) -> String {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
        match self {
            FamilySpec::CompleteSplit { n, k } => write!(f, "S:{n},{k}"),
            FamilySpec::CompleteSplitPlus { n, k } => write!(f, "S+:{n},{k}"),
            FamilySpec::Path(t) => write!(f, "path:{t}"),
            FamilySpec::Star(s) => write!(f, "star:{s}"),
            FamilySpec::Complete(n) => write!(f, "K:{n}"),
            FamilySpec::Spider(legs) => write!(f, "spider:{}", list(legs)),
            FamilySpec::Broom { s, t } => write!(f, "broom:{s},{t}"),
            FamilySpec::GeneralizedBroom { s, t, l } => write!(f, "genbroom:{s},{t},{l}"),
            FamilySpec::Explicit { n, edges } => {
                let es: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "edges:{n}:{}", es.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse family spec {input:?}: {reason}")]
pub struct ParseFamilyError {
    pub input: String,
    pub reason: String,
}

impl FromStr for FamilySpec {
    type Err = ParseFamilyError;

    /// Accepts the forms produced by `Display`, e.g. `S:20,2`, `S+:10,2`,
    /// `spider:3,3,2,1`, `broom:2,5`, `genbroom:2,5,3`, `edges:3:0-1,1-2`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseFamilyError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (name, rest) = input.trim().split_once(':').ok_or_else(|| err("missing ':'"))?;
        let nums = |s: &str| -> Result<Vec<usize>, ParseFamilyError> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| err("expected unsigned integers")))
                .collect()
        };
        let exact = |v: Vec<usize>, len: usize| -> Result<Vec<usize>, ParseFamilyError> {
            if v.len() == len {
                Ok(v)
            } else {
                Err(err(&format!("expected {len} parameter(s)")))
            }
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "s" | "split" => {
                let v = exact(nums(rest)?, 2)?;
                FamilySpec::CompleteSplit { n: v[0], k: v[1] }
            }
            "s+" | "split+" | "split-plus" => {
                let v = exact(nums(rest)?, 2)?;
                FamilySpec::CompleteSplitPlus { n: v[0], k: v[1] }
            }
            "path" | "p" => FamilySpec::Path(exact(nums(rest)?, 1)?[0]),
            "star" => FamilySpec::Star(exact(nums(rest)?, 1)?[0]),
            "k" | "complete" => FamilySpec::Complete(exact(nums(rest)?, 1)?[0]),
            "spider" => FamilySpec::Spider(nums(rest)?),
            "broom" => {
                let v = exact(nums(rest)?, 2)?;
                FamilySpec::Broom { s: v[0], t: v[1] }
            }
            "genbroom" => {
                let v = exact(nums(rest)?, 3)?;
                FamilySpec::GeneralizedBroom { s: v[0], t: v[1], l: v[2] }
            }
            "edges" => {
                let (n, list) = rest.split_once(':').unwrap_or((rest, ""));
                let n = n.trim().parse().map_err(|_| err("expected vertex count"))?;
                let mut edges = Vec::new();
                for pair in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    let (u, v) = pair.split_once('-').ok_or_else(|| err("edges are written u-v"))?;
                    let u = u.trim().parse().map_err(|_| err("bad edge endpoint"))?;
                    let v = v.trim().parse().map_err(|_| err("bad edge endpoint"))?;
                    edges.push((u, v));
                }
                FamilySpec::Explicit { n, edges }
            }
            _ => return Err(err("unknown family name")),
        };
        Ok(spec)
    }
}

/// Whether `g` is isomorphic to `S_{n,k}` (`n = g.n()`), decided from the
/// complement: `k` isolated vertices plus a clique on the rest.
pub fn is_complete_split(g: &Graph, k: usize) -> bool {
    split_shape(g, k) == Some(0)
}

/// Whether `g` is isomorphic to `S⁺_{n,k}`.
pub fn is_complete_split_plus(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k >= 1 && k + 2 == n {
        return g.edge_count() == n * (n - 1) / 2;
    }
    split_shape(g, k) == Some(1)
}

/// With exactly `k` universal vertices, the number of edges among the rest.
fn split_shape(g: &Graph, k: usize) -> Option<usize> {
    let n = g.n();
    if k < 1 || k >= n {
        return None;
    }
    if k + 1 == n {
        return (g.edge_count() == n * (n - 1) / 2).then_some(0);
    }
    let universal: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    if universal.len() != k {
        return None;
    }
    Some(g.edge_count() - (k * (n - k) + k * (k - 1) / 2))
}
