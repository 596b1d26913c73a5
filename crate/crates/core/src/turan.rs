//! Turán-type edge bounds and their checks on concrete graphs.
//!
//! Bounds are exact rationals. A bound proved only for sufficiently large
//! `n` is tagged [`Applicability::Asymptotic`]; a violation of such a bound
//! at small `n` is data, not a failure.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::embed::{
    contains_tree_with_budget, find_linear_forest_with_budget, longest_path_stats, EmbedError, DEFAULT_BUDGET,
};
use crate::graph::{encode_graph6, is_complete_split_plus, FamilySpec, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TuranError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph must be connected for this check")]
    Disconnected,
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    Exact,
    /// Holds for `n` sufficiently large, with no explicit threshold.
    Asymptotic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Forbidden {
    Family(FamilySpec),
    /// Disjoint union of paths with these orders.
    LinearForest(Vec<usize>),
}

fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuranBound {
    pub forbidden: Forbidden,
    pub n: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: Ratio<i64>,
    pub applicability: Applicability,
}

impl TuranBound {
    pub fn as_f64(&self) -> f64 {
        *self.bound.numer() as f64 / *self.bound.denom() as f64
    }

    /// Whether `edges` stays within the bound (`<`, as stated, for `ℓP₃`).
    pub fn admits(&self, edges: usize) -> bool {
        let e = Ratio::from_integer(edges as i64);
        match &self.forbidden {
            Forbidden::LinearForest(l) if l.iter().all(|&a| a == 3) => e < self.bound,
            _ => e <= self.bound,
        }
    }
}

/// `ex(n, P_t) ≤ (t−2)n/2`.
pub fn bound_path(n: usize, t: usize) -> Result<TuranBound, TuranError> {
    if n < 1 || t < 1 {
        return Err(TuranError::InvalidParameters(format!("need n, t >= 1, got n={n}, t={t}")));
    }
    Ok(TuranBound {
        forbidden: Forbidden::Family(FamilySpec::Path(t)),
        n,
        bound: Ratio::new((t as i64 - 2) * n as i64, 2),
        applicability: Applicability::Exact,
    })
}

/// `ex(n, ℓP₃) < (ℓ − 1/2)n` for large `n`.
pub fn bound_ell_p3(n: usize, ell: usize) -> Result<TuranBound, TuranError> {
    if ell < 2 {
        return Err(TuranError::InvalidParameters(format!("need ell >= 2, got {ell}")));
    }
    Ok(TuranBound {
        forbidden: Forbidden::LinearForest(vec![3; ell]),
        n,
        bound: Ratio::new((2 * ell as i64 - 1) * n as i64, 2),
        applicability: Applicability::Asymptotic,
    })
}

/// `ex(n, ∪P_{a_i}) ≤ (Σ⌊a_i/2⌋ − 1)n` for large `n`, at least two paths,
/// all `a_i ≥ 2`, not all `a_i = 3`.
pub fn bound_linear_forest(n: usize, lengths: &[usize]) -> Result<TuranBound, TuranError> {
    if lengths.len() < 2 {
        return Err(TuranError::InvalidParameters("need at least two paths".into()));
    }
    if lengths.iter().any(|&a| a < 2) {
        return Err(TuranError::InvalidParameters("every path needs order >= 2".into()));
    }
    if lengths.iter().all(|&a| a == 3) {
        return Err(TuranError::InvalidParameters("all paths of order 3 is excluded".into()));
    }
    let halves: i64 = lengths.iter().map(|&a| (a / 2) as i64).sum();
    Ok(TuranBound {
        forbidden: Forbidden::LinearForest(lengths.to_vec()),
        n,
        bound: Ratio::from_integer((halves - 1) * n as i64),
        applicability: Applicability::Asymptotic,
    })
}

/// `e(S⁺_{n,k}) = kn − k(k+1)/2 + 1`.
pub fn edge_threshold_s_plus(n: usize, k: usize) -> Result<usize, TuranError> {
    if k < 1 || k + 2 > n {
        return Err(TuranError::InvalidParameters(format!("need 1 <= k <= n-2, got n={n}, k={k}")));
    }
    Ok(k * n - k * (k + 1) / 2 + 1)
}

/// The statements that can be checked on a single graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "lemma")]
pub enum LemmaCheck {
    /// `e(G) ≤ Σ p_v / 2`.
    SumLongestPath,
    /// `P_t`-free implies `e ≤ (t−2)n/2`.
    PathTuranBound { t: usize },
    /// `ℓP₃`-free implies `e < (ℓ − 1/2)n`.
    EllP3 { ell: usize },
    /// Linear-forest-free implies the matching edge bound.
    LinearForest { lengths: Vec<usize> },
    /// Connected, `e ≥ e(S⁺_{n,k})`, `G ≇ S⁺_{n,k}` implies `P_{2k+3} ⊆ G`.
    PathTuran { k: usize },
    /// `e > (t−2)n/2` implies every three-leg spider on `t` vertices.
    Spider3ErdosSos { t: usize },
    /// Connected, `e ≥ e(S⁺_{n,k})` implies `B_{2,2k+1} ⊆ G`.
    BroomTuran { k: usize },
}

impl LemmaCheck {
    pub fn applicability(&self) -> Applicability {
        match self {
            LemmaCheck::SumLongestPath | LemmaCheck::PathTuranBound { .. } | LemmaCheck::Spider3ErdosSos { .. } => {
                Applicability::Exact
            }
            _ => Applicability::Asymptotic,
        }
    }

    pub fn name(&self) -> String {
        match self {
            LemmaCheck::SumLongestPath => "sum_longest_path".into(),
            LemmaCheck::PathTuranBound { t } => format!("path_turan_bound(t={t})"),
            LemmaCheck::EllP3 { ell } => format!("ell_p3(ell={ell})"),
            LemmaCheck::LinearForest { lengths } => format!("linear_forest({lengths:?})"),
            LemmaCheck::PathTuran { k } => format!("path_turan(k={k})"),
            LemmaCheck::Spider3ErdosSos { t } => format!("spider3_erdos_sos(t={t})"),
            LemmaCheck::BroomTuran { k } => format!("broom_turan(k={k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaVerdict {
    pub lemma: LemmaCheck,
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub violation: bool,
    pub applicability: Applicability,
    pub detail: String,
}

/// Three-leg spiders on `t` vertices (legs `a ≥ b ≥ c ≥ 1`) plus `P_t`.
pub fn three_leg_spiders(t: usize) -> Vec<FamilySpec> {
    let mut out = vec![FamilySpec::Path(t)];
    let m = t.saturating_sub(1);
    for a in 1..=m {
        for b in 1..=a {
            if a + b < m && m - a - b <= b {
                out.push(FamilySpec::Spider(vec![a, b, m - a - b]));
            }
        }
    }
    out
}

pub fn check_lemma(g: &Graph, lemma: &LemmaCheck) -> Result<LemmaVerdict, TuranError> {
    check_lemma_with_budget(g, lemma, DEFAULT_BUDGET)
}

/// As [`check_lemma`], with an explicit node budget for each containment
/// search.
pub fn check_lemma_with_budget(g: &Graph, lemma: &LemmaCheck, budget: u64) -> Result<LemmaVerdict, TuranError> {
    let contains_tree = |h: &Graph, p: &Graph| contains_tree_with_budget(h, p, budget);
    let find_linear_forest = |h: &Graph, l: &[usize], a: Option<&[usize]>| find_linear_forest_with_budget(h, l, a, budget);
    let (n, e) = (g.n(), g.edge_count());
    let mut detail = String::new();
    let needs_connected = matches!(lemma, LemmaCheck::PathTuran { .. } | LemmaCheck::BroomTuran { .. });
    if needs_connected && !g.is_connected() {
        return Err(TuranError::Disconnected);
    }
    let (hyp, concl) = match lemma {
        LemmaCheck::SumLongestPath => {
            let st = longest_path_stats(g)?;
            let sum: usize = st.p.iter().sum();
            detail = format!("2e = {}, sum p_v = {sum}", 2 * e);
            (true, 2 * e <= sum)
        }
        LemmaCheck::PathTuranBound { t } => {
            let b = bound_path(n.max(1), *t)?;
            let found = contains_tree(g, &FamilySpec::Path(*t).build().map_err(EmbedError::from)?)?;
            detail = format!("bound {}", b.bound);
            (found.is_none(), b.admits(e))
        }
        LemmaCheck::EllP3 { ell } => {
            let b = bound_ell_p3(n, *ell)?;
            let found = find_linear_forest(g, &vec![3; *ell], None)?;
            detail = format!("bound {} (strict)", b.bound);
            (found.is_none(), b.admits(e))
        }
        LemmaCheck::LinearForest { lengths } => {
            let b = bound_linear_forest(n, lengths)?;
            let found = find_linear_forest(g, lengths, None)?;
            detail = format!("bound {}", b.bound);
            (found.is_none(), b.admits(e))
        }
        LemmaCheck::PathTuran { k } => {
            if *k < 2 {
                return Err(TuranError::InvalidParameters(format!("need k >= 2, got {k}")));
            }
            let thr = edge_threshold_s_plus(n, *k)?;
            let hyp = e >= thr && !is_complete_split_plus(g, *k);
            let path = FamilySpec::Path(2 * k + 3).build().map_err(EmbedError::from)?;
            let found = if hyp { contains_tree(g, &path)? } else { None };
            detail = format!("threshold {thr}");
            if let Some(emb) = &found {
                detail.push_str(&format!(", path {:?}", emb.assignment));
            }
            (hyp, !hyp || found.is_some())
        }
        LemmaCheck::Spider3ErdosSos { t } => {
            if *t < 2 {
                return Err(TuranError::InvalidParameters(format!("need t >= 2, got {t}")));
            }
            let hyp = 2 * e > (t - 2) * n;
            let mut missing = Vec::new();
            if hyp {
                for sp in three_leg_spiders(*t) {
                    if contains_tree(g, &sp.build().map_err(EmbedError::from)?)?.is_none() {
                        missing.push(sp.to_string());
                    }
                }
            }
            if !missing.is_empty() {
                detail = format!("missing {}", missing.join(" "));
            }
            (hyp, missing.is_empty())
        }
        LemmaCheck::BroomTuran { k } => {
            if *k < 1 {
                return Err(TuranError::InvalidParameters(format!("need k >= 1, got {k}")));
            }
            let thr = edge_threshold_s_plus(n, *k)?;
            let hyp = e >= thr;
            let broom = FamilySpec::Broom { s: 2, t: 2 * k + 1 }.build().map_err(EmbedError::from)?;
            let found = if hyp { contains_tree(g, &broom)? } else { None };
            detail = format!("threshold {thr}");
            if let Some(emb) = &found {
                detail.push_str(&format!(", broom {:?}", emb.assignment));
            }
            (hyp, !hyp || found.is_some())
        }
    };
    Ok(LemmaVerdict {
        lemma: lemma.clone(),
        graph6: encode_graph6(g),
        n,
        edges: e,
        hypothesis_holds: hyp,
        conclusion_holds: concl,
        violation: hyp && !concl,
        applicability: lemma.applicability(),
        detail,
    })
}
