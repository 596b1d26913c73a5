//! Where campaign graphs come from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sptree::enumerate::{all_graphs, all_graphs_extended, perturb_extremal, random_graph, RandomModel};
use sptree::{FamilySpec, Graph};

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Source {
    /// Every isomorphism class of the given order.
    Exhaustive,
    /// `count` samples of `G(n, p)`, sample `i` seeded from `(seed, n, i)`.
    Random { count: usize, p: f64, seed: u64 },
    /// Perturbations of `S_{n,k}` (or `S⁺_{n,k}` when `plus`). With
    /// `samples = 0` every single-edge flip of the base is produced (radius
    /// must be 1); otherwise `samples` random perturbations with exactly
    /// `radius` edge changes each. The base itself is always included.
    Perturbation { plus: bool, radius: usize, samples: usize, seed: u64 },
}

/// One graph handed to the campaign workers.
#[derive(Debug, Clone)]
pub struct SourceItem {
    pub n: usize,
    pub index: usize,
    pub graph: Graph,
}

/// Stable per-sample seed (splitmix64 finaliser over the inputs).
pub fn derive_seed(seed: u64, n: usize, index: usize) -> u64 {
    let mut z = seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (index as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Source {
    /// Same source with its seed replaced; exhaustive sources are unchanged.
    pub fn with_seed(&self, new: u64) -> Source {
        let mut s = self.clone();
        match &mut s {
            Source::Exhaustive => {}
            Source::Random { seed, .. } | Source::Perturbation { seed, .. } => *seed = new,
        }
        s
    }

    pub fn materialise(&self, n: usize, k: usize, extended: bool) -> Result<Vec<SourceItem>, HarnessError> {
        let items: Vec<Graph> = match self {
            Source::Exhaustive => {
                let cursor = if extended { all_graphs_extended(n, false)? } else { all_graphs(n, false)? };
                cursor.collect()
            }
            Source::Random { count, p, seed } => (0..*count)
                .map(|i| random_graph(n, RandomModel::Probability(*p), derive_seed(*seed, n, i)))
                .collect::<Result<_, _>>()?,
            Source::Perturbation { plus, radius, samples, seed } => {
                let base = if *plus {
                    FamilySpec::CompleteSplitPlus { n, k }
                } else {
                    FamilySpec::CompleteSplit { n, k }
                };
                let g = base.build().map_err(sptree::enumerate::EnumError::from)?;
                let mut out = vec![g.clone()];
                if *samples == 0 {
                    if *radius != 1 {
                        return Err(HarnessError::InvalidSpec(
                            "exhaustive perturbation needs radius 1".into(),
                        ));
                    }
                    for (u, v) in g.edges() {
                        out.push(g.without_edge(u, v).map_err(sptree::enumerate::EnumError::from)?);
                    }
                    for (u, v) in g.non_edges() {
                        out.push(g.with_edge(u, v).map_err(sptree::enumerate::EnumError::from)?);
                    }
                } else {
                    for i in 0..*samples {
                        let s = derive_seed(*seed, n, i);
                        let add = (s % (*radius as u64 + 1)) as usize;
                        out.push(perturb_extremal(&base, add, radius - add, s)?);
                    }
                }
                out
            }
        };
        Ok(items
            .into_iter()
            .enumerate()
            .map(|(index, graph)| SourceItem { n, index, graph })
            .collect())
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Exhaustive => write!(f, "exhaustive"),
            Source::Random { count, p, seed } => write!(f, "random:{count}:{p}:{seed}"),
            Source::Perturbation { plus, radius, samples, seed } => {
                let base = if *plus { "plus" } else { "split" };
                write!(f, "perturb:{base}:{radius}:{samples}:{seed}")
            }
        }
    }
}

/// `exhaustive`, `random:<count>[:<p>[:<seed>]]` or
/// `perturb:<split|plus>[:<radius>[:<samples>[:<seed>]]]`.
impl FromStr for Source {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| HarnessError::InvalidSpec(format!("source `{s}`: {why}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize, default: u64| -> Result<u64, HarnessError> {
            parts.get(i).map_or(Ok(default), |p| p.parse().map_err(|_| bad("expected an integer")))
        };
        match parts[0] {
            "exhaustive" if parts.len() == 1 => Ok(Source::Exhaustive),
            "random" if (2..=4).contains(&parts.len()) => {
                let p = parts.get(2).map_or(Ok(0.5), |p| p.parse::<f64>().map_err(|_| bad("bad probability")))?;
                Ok(Source::Random {
                    count: num(1, 0)? as usize,
                    p,
                    seed: num(3, 0)?,
                })
            }
            "perturb" if (2..=5).contains(&parts.len()) => {
                let plus = match parts[1] {
                    "split" => false,
                    "plus" => true,
                    _ => return Err(bad("base must be `split` or `plus`")),
                };
                Ok(Source::Perturbation {
                    plus,
                    radius: num(2, 1)? as usize,
                    samples: num(3, 0)? as usize,
                    seed: num(4, 0)?,
                })
            }
            _ => Err(bad("unknown form")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["exhaustive", "random:20:0.3:7", "perturb:plus:2:10:5", "perturb:split:1:0:0"] {
            assert_eq!(s.parse::<Source>().unwrap().to_string(), s);
        }
        assert_eq!(
            "random:5".parse::<Source>().unwrap(),
            Source::Random { count: 5, p: 0.5, seed: 0 }
        );
        assert!("random".parse::<Source>().is_err());
        assert!("perturb:other".parse::<Source>().is_err());
    }

    #[test]
    fn single_flip_neighbourhood() {
        let items = "perturb:split:1".parse::<Source>().unwrap().materialise(6, 2, false).unwrap();
        assert_eq!(items.len(), 1 + 15);
        let random = Source::Random { count: 3, p: 0.5, seed: 1 };
        let a = random.materialise(7, 2, false).unwrap();
        let b = random.materialise(7, 2, false).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| x.graph == y.graph));
    }
}
