//! Constructive spider embedding along the walk-sum case analysis.
//!
//! A vertex `u` with `B_u ≥ 0` becomes the spider's centre. Small degree
//! routes the spider through a complete bipartite subgraph `K_{X,Y}` with
//! `|X| = k`; large degree splits on the number of edges between the first
//! two shells and looks for the non-unit legs as a linear forest either in
//! `L_u` (anchored in the first shell) or inside the first shell. Whatever
//! the branch, an invalid or missing result hands over to exact search.

use serde::Serialize;

use super::{contains_tree_with_budget, find_linear_forest_with_budget, EmbedError, Embedding, DEFAULT_BUDGET};
use crate::graph::{FamilySpec, Graph};
use crate::spectral::{mu_s_closed, spectral_radius_robust, walk_sum_b_u, WalkSumDecomposition};

/// Slack allowed when checking `μ(G) ≥ μ(S_{n,k})` in floating point.
const SPECTRAL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpiderBranch {
    /// `d(u) ≤ k`: the first shell is joined to almost everything.
    SmallCentre,
    /// `k+1 ≤ d(u) ≤ log₂ n`: `k` first-shell vertices with many common
    /// neighbours.
    CommonNeighbours,
    /// `d(u) > log₂ n` with many edges between the shells.
    AnchoredForest,
    /// `d(u) > log₂ n` with few edges between the shells.
    FirstShellForest,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpiderTrace {
    pub u: Option<usize>,
    pub b_u: Option<i64>,
    pub degree_u: usize,
    pub second_shell: usize,
    pub log2_n: f64,
    pub branch: Option<SpiderBranch>,
    pub cross_edges: usize,
    /// `k·d(u) + (2k−2)|N²(u)| − k(n−k)`.
    pub cross_threshold: i64,
    /// The branch produced a valid embedding by itself.
    pub constructive: bool,
    pub fallback_used: bool,
    pub note: String,
}

struct SpiderShape {
    legs: Vec<usize>,
    units: usize,
    odd: usize,
    /// Pattern vertex ids of each leg, centre side first.
    leg_vertices: Vec<Vec<usize>>,
}

fn shape(spider: &FamilySpec, k: usize) -> Result<SpiderShape, EmbedError> {
    let legs = match spider {
        FamilySpec::Spider(_) => spider.spider_legs().expect("spider"),
        _ => return Err(EmbedError::HypothesisViolation(format!("{spider} is not a spider"))),
    };
    spider.validate()?;
    let order = spider.order();
    if order != 2 * k + 3 {
        return Err(EmbedError::HypothesisViolation(format!(
            "spider order {order} differs from 2k+3 = {}",
            2 * k + 3
        )));
    }
    let units = legs.iter().filter(|&&t| t == 1).count();
    let odd = legs.iter().filter(|&&t| t % 2 == 1).count();
    if odd < 3 || 2 * units < odd + 2 {
        return Err(EmbedError::HypothesisViolation(format!(
            "need r >= 3 and 2s - r >= 2, got r={odd}, s={units}"
        )));
    }
    let mut next = 1;
    let leg_vertices = legs
        .iter()
        .map(|&t| {
            let v: Vec<usize> = (next..next + t).collect();
            next += t;
            v
        })
        .collect();
    Ok(SpiderShape {
        legs,
        units,
        odd,
        leg_vertices,
    })
}

/// Embeds a spider of order `2k+3` (with `r ≥ 3` odd legs and `2s − r ≥ 2`,
/// `s` the number of unit legs) into a graph with `μ(G) ≥ μ(S_{n,k})`.
pub fn proof_guided_spider_embed(
    g: &Graph,
    spider: &FamilySpec,
    k: usize,
) -> Result<Option<(Embedding, SpiderTrace)>, EmbedError> {
    if k < 2 {
        return Err(EmbedError::HypothesisViolation(format!("need k >= 2, got {k}")));
    }
    let sh = shape(spider, k)?;
    let n = g.n();
    if n < k + 1 {
        return Err(EmbedError::HypothesisViolation(format!("host order {n} below k+1")));
    }
    let mu = spectral_radius_robust(g, 1e-12f64).map_err(|e| EmbedError::InvalidParameters(e.to_string()))?;
    let target: f64 = mu_s_closed(n, k).map_err(|e| EmbedError::InvalidParameters(e.to_string()))?;
    if mu.mu < target - SPECTRAL_SLACK {
        return Err(EmbedError::HypothesisViolation(format!(
            "spectral radius {} below mu(S_{{{n},{k}}}) = {target}",
            mu.mu
        )));
    }
    let pattern = spider.build()?;

    let mut trace = SpiderTrace {
        u: None,
        b_u: None,
        degree_u: 0,
        second_shell: 0,
        log2_n: (n as f64).log2(),
        branch: None,
        cross_edges: 0,
        cross_threshold: 0,
        constructive: false,
        fallback_used: false,
        note: String::new(),
    };

    let mut best: Option<WalkSumDecomposition> = None;
    for v in 0..n {
        let w = walk_sum_b_u(g, v, k).map_err(|e| EmbedError::InvalidParameters(e.to_string()))?;
        if w.b_u >= 0 && best.as_ref().is_none_or(|b| w.b_u > b.b_u) {
            best = Some(w);
        }
    }

    if let Some(w) = best {
        let du = w.first_shell.len();
        let (kk, nn) = (k as i64, n as i64);
        trace.u = Some(w.u);
        trace.b_u = Some(w.b_u);
        trace.degree_u = du;
        trace.second_shell = w.second_shell.len();
        trace.cross_edges = w.edges_between_shells;
        trace.cross_threshold =
            kk * du as i64 + (2 * kk - 2) * w.second_shell.len() as i64 - kk * (nn - kk);
        let attempt = if du <= k {
            trace.branch = Some(SpiderBranch::SmallCentre);
            via_bipartite(g, &pattern, &sh, &w.first_shell, &mut trace)
        } else if (du as f64) <= trace.log2_n {
            trace.branch = Some(SpiderBranch::CommonNeighbours);
            via_common_neighbours(g, &pattern, &sh, k, &w, &mut trace)
        } else if trace.cross_edges as i64 > trace.cross_threshold {
            trace.branch = Some(SpiderBranch::AnchoredForest);
            via_forest(g, &sh, &w, true, &mut trace)
        } else {
            trace.branch = Some(SpiderBranch::FirstShellForest);
            via_forest(g, &sh, &w, false, &mut trace)
        };
        if let Some(emb) = attempt {
            if emb.validate(&pattern, g) {
                trace.constructive = true;
                return Ok(Some((emb, trace)));
            }
            trace.note = "constructed map failed validation".into();
        }
    } else {
        trace.note = "no vertex with B_u >= 0".into();
    }

    trace.fallback_used = true;
    match contains_tree_with_budget(g, &pattern, DEFAULT_BUDGET) {
        Ok(Some(emb)) => Ok(Some((emb, trace))),
        Ok(None) => Ok(None),
        Err(EmbedError::BudgetExceeded { budget }) => Err(EmbedError::FallbackExhausted { budget }),
        Err(e) => Err(e),
    }
}

/// Puts the smaller colour class of the spider into `x` and the larger
/// into common neighbours of `x`.
fn via_bipartite(
    g: &Graph,
    pattern: &Graph,
    sh: &SpiderShape,
    x: &[usize],
    trace: &mut SpiderTrace,
) -> Option<Embedding> {
    let y = common_neighbours(g, x);
    let emb = bipartite_embedding(pattern, x, &y);
    if emb.is_none() {
        trace.note = format!(
            "|X| = {}, {} common neighbours; spider classes need {} and {}",
            x.len(),
            y.len(),
            (pattern.n() - (sh.odd - 1)) / 2,
            (pattern.n() + sh.odd - 1) / 2
        );
    }
    emb
}

fn common_neighbours(g: &Graph, x: &[usize]) -> Vec<usize> {
    let mut set = crate::bits::VertexSet::full(g.n());
    for &v in x {
        set.intersect_with(g.row(v));
    }
    set.to_vec()
}

fn bipartite_embedding(pattern: &Graph, x: &[usize], y: &[usize]) -> Option<Embedding> {
    let colour = pattern.bipartition()?;
    let ones = colour.iter().filter(|&&c| c).count();
    let small_is_true = ones * 2 <= colour.len();
    let small: Vec<usize> = (0..pattern.n()).filter(|&p| colour[p] == small_is_true).collect();
    let large: Vec<usize> = (0..pattern.n()).filter(|&p| colour[p] != small_is_true).collect();
    if small.len() > x.len() || large.len() > y.len() {
        return None;
    }
    let mut assignment = vec![0; pattern.n()];
    for (p, &h) in small.iter().zip(x) {
        assignment[*p] = h;
    }
    for (p, &h) in large.iter().zip(y) {
        assignment[*p] = h;
    }
    Some(Embedding { assignment })
}

fn via_common_neighbours(
    g: &Graph,
    pattern: &Graph,
    sh: &SpiderShape,
    k: usize,
    w: &WalkSumDecomposition,
    trace: &mut SpiderTrace,
) -> Option<Embedding> {
    let need = (pattern.n() + sh.odd - 1) / 2;
    let first = &w.first_shell;
    let mut pick: Vec<usize> = (0..k).collect();
    let mut best_seen = 0;
    loop {
        let x: Vec<usize> = pick.iter().map(|&i| first[i]).collect();
        let y = common_neighbours(g, &x);
        best_seen = best_seen.max(y.len());
        if y.len() >= need {
            if let Some(e) = bipartite_embedding(pattern, &x, &y) {
                return Some(e);
            }
        }
        if !next_combination(&mut pick, first.len()) {
            break;
        }
    }
    trace.note = format!("no k-subset of N1(u) has {need} common neighbours (best {best_seen})");
    None
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else { return false };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

fn via_forest(
    g: &Graph,
    sh: &SpiderShape,
    w: &WalkSumDecomposition,
    anchored: bool,
    trace: &mut SpiderTrace,
) -> Option<Embedding> {
    let f = w.first_shell.len();
    let long: Vec<usize> = (0..sh.legs.len()).filter(|&i| sh.legs[i] > 1).collect();
    let lengths: Vec<usize> = long.iter().map(|&i| sh.legs[i]).collect();
    let (host, ids): (Graph, Vec<usize>) = if anchored {
        (w.l_u.clone(), w.l_u_vertices.clone())
    } else {
        (g.induced(&w.first_shell), w.first_shell.clone())
    };
    let first_local: Vec<usize> = (0..f).collect();
    let found = if lengths.is_empty() {
        Ok(Some(Vec::new()))
    } else {
        let anchor = if anchored { Some(first_local.as_slice()) } else { None };
        find_linear_forest_with_budget(&host, &lengths, anchor, DEFAULT_BUDGET / 10)
    };
    let paths = match found {
        Ok(Some(p)) => p,
        Ok(None) => {
            trace.note = format!("linear forest {lengths:?} not found");
            return None;
        }
        Err(e) => {
            trace.note = format!("linear forest search: {e}");
            return None;
        }
    };
    let mut used = vec![false; ids.len()];
    for p in &paths {
        for &v in p {
            used[v] = true;
        }
    }
    let spare: Vec<usize> = (0..f).filter(|&i| !used[i]).take(sh.units).collect();
    if spare.len() < sh.units {
        trace.note = format!("only {} first-shell vertices left for {} unit legs", spare.len(), sh.units);
        return None;
    }
    let mut assignment = vec![0; 1 + sh.legs.iter().sum::<usize>()];
    assignment[0] = w.u;
    for (&leg, path) in long.iter().zip(&paths) {
        for (&p, &h) in sh.leg_vertices[leg].iter().zip(path) {
            assignment[p] = ids[h];
        }
    }
    let units = (0..sh.legs.len()).filter(|&i| sh.legs[i] == 1);
    for (leg, &h) in units.zip(&spare) {
        assignment[sh.leg_vertices[leg][0]] = ids[h];
    }
    Some(Embedding { assignment })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypothesis_filters() {
        let g = FamilySpec::CompleteSplitPlus { n: 50, k: 3 }.build().unwrap();
        // Order 10, not 2k+3 = 9.
        let e = proof_guided_spider_embed(&g, &FamilySpec::Spider(vec![1, 1, 1, 3, 3]), 3);
        assert!(matches!(e, Err(EmbedError::HypothesisViolation(_))));
        // r = 4, s = 2: 2s - r = 0.
        let e = proof_guided_spider_embed(&g, &FamilySpec::Spider(vec![1, 1, 3, 3]), 3);
        assert!(matches!(e, Err(EmbedError::HypothesisViolation(_))));
        let e = proof_guided_spider_embed(&g, &FamilySpec::Path(9), 3);
        assert!(matches!(e, Err(EmbedError::HypothesisViolation(_))));
        let sparse = FamilySpec::Path(50).build().unwrap();
        let e = proof_guided_spider_embed(&sparse, &FamilySpec::Spider(vec![1, 1, 1, 2, 3]), 3);
        assert!(matches!(e, Err(EmbedError::HypothesisViolation(_))));
    }

    #[test]
    fn plus_host_order_nine_spider() {
        let g = FamilySpec::CompleteSplitPlus { n: 50, k: 3 }.build().unwrap();
        let spider = FamilySpec::Spider(vec![1, 1, 1, 2, 3]);
        let (emb, trace) = proof_guided_spider_embed(&g, &spider, 3).unwrap().unwrap();
        assert!(emb.validate(&spider.build().unwrap(), &g));
        assert!(trace.branch.is_some());
        assert!(trace.b_u.unwrap() >= 0);
    }

    #[test]
    fn complete_host() {
        for legs in [vec![1, 1, 1, 3], vec![1, 1, 1, 1, 2], vec![1, 1, 1, 1, 1, 1]] {
            let spider = FamilySpec::Spider(legs);
            let g = Graph::complete(7);
            let (emb, _) = proof_guided_spider_embed(&g, &spider, 2).unwrap().unwrap();
            assert!(emb.validate(&spider.build().unwrap(), &g));
        }
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![2, 3]);
    }
}
