//! Campaign definitions and the runner.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sptree::embed::{
    all_trees_of_order, contains_tree_with_budget, free_tree_code, proof_guided_spider_embed, EmbedError,
    MAX_TREE_ORDER,
};
use sptree::enumerate::{EXHAUSTIVE_CAP, EXTENDED_CAP};
use sptree::graph::{
    canonical_key, is_complete_split, is_complete_split_plus, max_vertices, DEFAULT_CANON_CAP,
};
use sptree::spectral::{
    bound_edges, bound_min_degree, dense_spectral_radius, mu_s_closed, spectral_radius_robust, DENSE_CAP,
};
use sptree::turan::{check_lemma_with_budget, LemmaCheck, TuranError};
use sptree::{encode_graph6, FamilySpec, Graph};

use crate::report::{
    Classification, ErrorKind, ErrorRecord, NStat, PatternFrequency, ThresholdEstimate, Timings, Totals,
    VerdictRecord, VerificationReport, SCHEMA_VERSION,
};
use crate::source::{Source, SourceItem};
use crate::HarnessError;

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Tolerance of the second, tighter eigenvalue solve inside the guard band.
const RESOLVE_TOL: f64 = 1e-13;

/// Slack for comparing μ against the closed-form upper bounds.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignId {
    ConjectureA,
    ConjectureB,
    TheoremPath,
    TheoremSpider,
    TheoremBrooms,
    BroomTuran,
    LemmaSuite,
    GenbroomExplore,
}

impl CampaignId {
    pub const ALL: [CampaignId; 8] = [
        CampaignId::ConjectureA,
        CampaignId::ConjectureB,
        CampaignId::TheoremPath,
        CampaignId::TheoremSpider,
        CampaignId::TheoremBrooms,
        CampaignId::BroomTuran,
        CampaignId::LemmaSuite,
        CampaignId::GenbroomExplore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CampaignId::ConjectureA => "conjecture_a",
            CampaignId::ConjectureB => "conjecture_b",
            CampaignId::TheoremPath => "theorem_path",
            CampaignId::TheoremSpider => "theorem_spider",
            CampaignId::TheoremBrooms => "theorem_brooms",
            CampaignId::BroomTuran => "broom_turan",
            CampaignId::LemmaSuite => "lemma_suite",
            CampaignId::GenbroomExplore => "genbroom_explore",
        }
    }
}

impl fmt::Display for CampaignId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CampaignId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CampaignId::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| HarnessError::InvalidSpec(format!("unknown campaign `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSpec {
    pub campaign: CampaignId,
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub source: Source,
    /// Half-width of the guard band around spectral thresholds.
    pub epsilon: f64,
    /// Node budget for each containment search.
    pub budget: u64,
    /// `1` runs serially; more splits the source into contiguous shards
    /// processed in parallel.
    pub shards: usize,
    /// Admit exhaustive enumeration at `n = 9`.
    pub extended: bool,
}

impl CampaignSpec {
    pub fn new(campaign: CampaignId, k: usize, n: usize) -> Self {
        CampaignSpec {
            campaign,
            k,
            n_min: n,
            n_max: n,
            source: Source::Exhaustive,
            epsilon: DEFAULT_EPSILON,
            budget: sptree::embed::DEFAULT_BUDGET,
            shards: 1,
            extended: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::InvalidSpec(m));
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.n_min > self.n_max || self.n_min == 0 {
            return bad(format!("bad n range {}..={}", self.n_min, self.n_max));
        }
        if self.shards == 0 {
            return bad("shards must be at least 1".into());
        }
        let k = self.k;
        let needs_k2 = !matches!(self.campaign, CampaignId::LemmaSuite | CampaignId::BroomTuran);
        if k < 1 || (needs_k2 && k < 2) {
            return bad(format!("k = {k} too small for {}", self.campaign));
        }
        let cap = if self.extended { EXTENDED_CAP } else { EXHAUSTIVE_CAP };
        if self.source == Source::Exhaustive && self.n_max > cap {
            return Err(HarnessError::Cap(format!("exhaustive source limited to n <= {cap}")));
        }
        if self.n_max > max_vertices() {
            return Err(HarnessError::Cap(format!("n_max exceeds the vertex cap {}", max_vertices())));
        }
        let tree_order = match self.campaign {
            CampaignId::ConjectureA => 2 * k + 2,
            CampaignId::ConjectureB => 2 * k + 3,
            _ => 0,
        };
        if tree_order > MAX_TREE_ORDER {
            return Err(HarnessError::Cap(format!(
                "trees of order {tree_order} exceed the generator cap {MAX_TREE_ORDER}"
            )));
        }
        let spectral = !matches!(self.campaign, CampaignId::LemmaSuite | CampaignId::BroomTuran);
        if spectral && self.n_min < k + 2 {
            return bad(format!("spectral campaigns need n >= k + 2 = {}", k + 2));
        }
        if matches!(self.source, Source::Perturbation { .. }) && self.n_min < k + 2 {
            return bad(format!("perturbation sources need n >= k + 2 = {}", k + 2));
        }
        Ok(())
    }
}

/// A labelled tree the campaign asks for.
#[derive(Debug, Clone)]
struct Pattern {
    label: String,
    spec: Option<FamilySpec>,
    graph: Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    Split,
    SplitPlus,
}

#[derive(Debug, Clone)]
enum Statement {
    /// `μ(G) ≥ μ(base)` and `G ≇ base` (when `exclude`) implies every
    /// pattern is a subgraph.
    Spectral {
        name: String,
        base: Base,
        exclude: bool,
        patterns: Vec<Pattern>,
        proof_guided: bool,
    },
    Lemma(LemmaCheck),
    /// `μ ≤` the minimum-degree bound and the edge bound.
    SpectralBounds,
}

impl Statement {
    fn name(&self) -> String {
        match self {
            Statement::Spectral { name, .. } => name.clone(),
            Statement::Lemma(l) => l.name(),
            Statement::SpectralBounds => "spectral_bounds".into(),
        }
    }

    fn advisory(&self) -> bool {
        match self {
            Statement::Spectral { .. } => true,
            Statement::Lemma(l) => l.applicability() == sptree::turan::Applicability::Asymptotic,
            Statement::SpectralBounds => false,
        }
    }
}

fn trees(order: usize) -> Result<Vec<Pattern>, HarnessError> {
    Ok(all_trees_of_order(order)?
        .into_iter()
        .map(|g| Pattern {
            label: format!("tree:{}", free_tree_code(&g).expect("tree")),
            spec: None,
            graph: g,
        })
        .collect())
}

fn from_specs(specs: Vec<FamilySpec>) -> Result<Vec<Pattern>, HarnessError> {
    let mut seen = BTreeMap::new();
    for spec in specs {
        let graph = spec.build().map_err(EmbedError::from)?;
        let code = free_tree_code(&graph)?;
        seen.entry(code).or_insert(Pattern {
            label: spec.to_string(),
            spec: Some(spec),
            graph,
        });
    }
    let mut out: Vec<Pattern> = seen.into_values().collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

/// Brooms `B_{s,t}` of the given order, one per isomorphism class.
pub fn brooms_of_order(order: usize) -> Vec<FamilySpec> {
    (1..order).map(|s| FamilySpec::Broom { s, t: order - s }).collect()
}

/// Spiders of order `2k+3` with `r ≥ 3` odd legs and `2s − r ≥ 2`, where
/// `s` counts legs of length one. Legs are listed in non-increasing order.
pub fn theorem_spiders(k: usize) -> Vec<FamilySpec> {
    fn partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    partitions(2 * k + 2, 2 * k + 2, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|legs| {
            let r = legs.iter().filter(|&&t| t % 2 == 1).count();
            let s = legs.iter().filter(|&&t| t == 1).count();
            r >= 3 && 2 * s >= r + 2
        })
        .map(FamilySpec::Spider)
        .collect()
}

/// Generalized brooms `B^ℓ_{s,t}` of the given order with `s ≤ s_max` and
/// `2 ≤ ℓ ≤ t − 1`, one per isomorphism class.
pub fn open_generalized_brooms(order: usize, s_max: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        if s >= order {
            break;
        }
        let t = order - s;
        for l in 2..t {
            if l <= t + 1 - l {
                out.push(FamilySpec::GeneralizedBroom { s, t, l });
            }
        }
    }
    out
}

fn statements(spec: &CampaignSpec) -> Result<Vec<Statement>, HarnessError> {
    let k = spec.k;
    let spectral = |name: String, base, exclude, patterns, proof_guided| Statement::Spectral {
        name,
        base,
        exclude,
        patterns,
        proof_guided,
    };
    Ok(match spec.campaign {
        CampaignId::ConjectureA => {
            vec![spectral(format!("a:all_trees:{}", 2 * k + 2), Base::Split, true, trees(2 * k + 2)?, false)]
        }
        CampaignId::ConjectureB => vec![spectral(
            format!("b:all_trees:{}", 2 * k + 3),
            Base::SplitPlus,
            true,
            trees(2 * k + 3)?,
            false,
        )],
        CampaignId::TheoremPath => vec![
            spectral(
                format!("a:path:{}", 2 * k + 2),
                Base::Split,
                true,
                from_specs(vec![FamilySpec::Path(2 * k + 2)])?,
                false,
            ),
            spectral(
                format!("b:path:{}", 2 * k + 3),
                Base::SplitPlus,
                true,
                from_specs(vec![FamilySpec::Path(2 * k + 3)])?,
                false,
            ),
        ],
        CampaignId::TheoremBrooms => vec![
            spectral(
                format!("a:brooms:{}", 2 * k + 2),
                Base::Split,
                true,
                from_specs(brooms_of_order(2 * k + 2))?,
                false,
            ),
            spectral(
                format!("b:brooms:{}", 2 * k + 3),
                Base::SplitPlus,
                true,
                from_specs(brooms_of_order(2 * k + 3))?,
                false,
            ),
        ],
        CampaignId::TheoremSpider => {
            let spiders: Vec<Pattern> = theorem_spiders(k)
                .into_iter()
                .map(|s| {
                    let graph = s.build().expect("valid spider");
                    Pattern {
                        label: s.to_string(),
                        spec: Some(s),
                        graph,
                    }
                })
                .collect();
            vec![spectral(format!("spiders:{}", 2 * k + 3), Base::Split, false, spiders, true)]
        }
        CampaignId::GenbroomExplore => vec![
            spectral(
                format!("a:genbrooms_s1:{}", 2 * k + 2),
                Base::Split,
                true,
                from_specs(open_generalized_brooms(2 * k + 2, 1))?,
                false,
            ),
            spectral(
                format!("b:genbrooms_s2:{}", 2 * k + 3),
                Base::SplitPlus,
                true,
                from_specs(open_generalized_brooms(2 * k + 3, 2))?,
                false,
            ),
        ],
        CampaignId::BroomTuran => vec![Statement::Lemma(LemmaCheck::BroomTuran { k })],
        CampaignId::LemmaSuite => {
            let mut v = vec![Statement::Lemma(LemmaCheck::SumLongestPath)];
            for t in 2..=6 {
                v.push(Statement::Lemma(LemmaCheck::PathTuranBound { t }));
            }
            for t in [4, 5] {
                v.push(Statement::Lemma(LemmaCheck::Spider3ErdosSos { t }));
            }
            v.push(Statement::SpectralBounds);
            v.push(Statement::Lemma(LemmaCheck::EllP3 { ell: 2 }));
            v.push(Statement::Lemma(LemmaCheck::LinearForest { lengths: vec![2, 2] }));
            v.push(Statement::Lemma(LemmaCheck::LinearForest { lengths: vec![4, 3] }));
            if k >= 2 {
                v.push(Statement::Lemma(LemmaCheck::PathTuran { k }));
            }
            v.push(Statement::Lemma(LemmaCheck::BroomTuran { k }));
            v
        }
    })
}

/// Spectral data shared by all graphs of one order.
#[derive(Debug, Clone)]
struct Thresholds {
    split: f64,
    plus: Option<f64>,
    split_key: Option<sptree::CanonicalKey>,
    plus_key: Option<sptree::CanonicalKey>,
}

fn precise_radius(g: &Graph) -> Result<f64, HarnessError> {
    let r = if g.n() <= DENSE_CAP {
        dense_spectral_radius::<f64>(g)?
    } else {
        spectral_radius_robust(g, RESOLVE_TOL)?
    };
    Ok(r.mu)
}

fn thresholds(n: usize, k: usize) -> Result<Thresholds, HarnessError> {
    let split = mu_s_closed::<f64>(n, k)?;
    let (plus, plus_key) = if k + 2 <= n {
        let g = FamilySpec::CompleteSplitPlus { n, k }.build().map_err(EmbedError::from)?;
        let key = if n <= DEFAULT_CANON_CAP { canonical_key(&g).ok() } else { None };
        (Some(precise_radius(&g)?), key)
    } else {
        (None, None)
    };
    let split_key = if n <= DEFAULT_CANON_CAP {
        let g = FamilySpec::CompleteSplit { n, k }.build().map_err(EmbedError::from)?;
        canonical_key(&g).ok()
    } else {
        None
    };
    Ok(Thresholds {
        split,
        plus,
        split_key,
        plus_key,
    })
}

fn is_exceptional(g: &Graph, base: Base, k: usize, th: &Thresholds) -> bool {
    let key = match base {
        Base::Split => &th.split_key,
        Base::SplitPlus => &th.plus_key,
    };
    match key {
        Some(key) => canonical_key(g).map(|c| &c == key).unwrap_or(false),
        None => match base {
            Base::Split => is_complete_split(g, k),
            Base::SplitPlus => is_complete_split_plus(g, k),
        },
    }
}

/// Output of one worker over one graph.
#[derive(Debug, Default)]
struct ItemOutcome {
    records: Vec<VerdictRecord>,
    errors: Vec<ErrorRecord>,
    evaluations: Vec<(String, usize, bool, bool, bool, bool)>,
    frequencies: Vec<(String, String, bool)>,
    branches: Vec<String>,
}

fn classify_error(e: &HarnessError) -> ErrorKind {
    match e {
        HarnessError::Embed(EmbedError::BudgetExceeded { .. } | EmbedError::FallbackExhausted { .. })
        | HarnessError::Turan(TuranError::Embed(EmbedError::BudgetExceeded { .. })) => ErrorKind::Budget,
        HarnessError::Embed(EmbedError::CapExceeded { .. })
        | HarnessError::Turan(TuranError::Embed(EmbedError::CapExceeded { .. }))
        | HarnessError::Cap(_) => ErrorKind::Cap,
        _ => ErrorKind::Other,
    }
}

struct Evaluator<'a> {
    spec: &'a CampaignSpec,
    statements: &'a [Statement],
    thresholds: &'a BTreeMap<usize, Thresholds>,
}

impl Evaluator<'_> {
    fn evaluate(&self, item: &SourceItem) -> ItemOutcome {
        let mut out = ItemOutcome::default();
        let g6 = encode_graph6(&item.graph);
        let mut mu_cache: Option<f64> = None;
        for st in self.statements {
            let name = st.name();
            match self.evaluate_one(item, st, &mut mu_cache, &mut out) {
                Ok(Some(mut rec)) => {
                    rec.graph6 = g6.clone();
                    out.evaluations.push((
                        name,
                        item.n,
                        rec.hypothesis_holds,
                        rec.violation,
                        rec.class == Classification::Boundary,
                        rec.class == Classification::Exceptional,
                    ));
                    let keep = rec.hypothesis_holds
                        || matches!(rec.class, Classification::Boundary | Classification::Exceptional);
                    if keep {
                        out.records.push(rec);
                    }
                }
                Ok(None) => {}
                Err(e) => out.errors.push(ErrorRecord {
                    n: item.n,
                    sample: item.index,
                    graph6: g6.clone(),
                    statement: name,
                    kind: classify_error(&e),
                    message: e.to_string(),
                }),
            }
        }
        out
    }

    fn mu(&self, g: &Graph, cache: &mut Option<f64>) -> Result<f64, HarnessError> {
        if let Some(m) = cache {
            return Ok(*m);
        }
        let m = spectral_radius_robust(g, sptree::spectral::DEFAULT_TOL)?.mu;
        *cache = Some(m);
        Ok(m)
    }

    fn missing_patterns(
        &self,
        g: &Graph,
        patterns: &[Pattern],
        proof_guided: bool,
        mut out: Option<&mut ItemOutcome>,
    ) -> Result<Vec<String>, HarnessError> {
        let mut missing = Vec::new();
        for p in patterns {
            let found = if proof_guided {
                let spider = p.spec.as_ref().expect("spider patterns carry a spec");
                let res = proof_guided_spider_embed(g, spider, self.spec.k)?;
                let tag = match &res {
                    Some((_, trace)) => {
                        let branch = trace.branch.map_or("no_centre".to_string(), |b| format!("{b:?}"));
                        if trace.constructive {
                            branch
                        } else {
                            format!("{branch}+fallback")
                        }
                    }
                    None => "none".into(),
                };
                if let Some(o) = out.as_deref_mut() {
                    o.branches.push(tag);
                }
                res.is_some()
            } else {
                contains_tree_with_budget(g, &p.graph, self.spec.budget)?.is_some()
            };
            if !found {
                missing.push(p.label.clone());
            }
        }
        Ok(missing)
    }

    fn record(&self, item: &SourceItem, st: &Statement) -> VerdictRecord {
        VerdictRecord {
            n: item.n,
            sample: item.index,
            graph6: String::new(),
            statement: st.name(),
            class: Classification::NotApplicable,
            mu: None,
            threshold: None,
            hypothesis_holds: false,
            conclusion_holds: None,
            violation: false,
            advisory: st.advisory(),
            missing: Vec::new(),
            detail: String::new(),
        }
    }

    fn evaluate_one(
        &self,
        item: &SourceItem,
        st: &Statement,
        mu_cache: &mut Option<f64>,
        out: &mut ItemOutcome,
    ) -> Result<Option<VerdictRecord>, HarnessError> {
        let g = &item.graph;
        let k = self.spec.k;
        let mut rec = self.record(item, st);
        match st {
            Statement::Spectral {
                base,
                exclude,
                patterns,
                proof_guided,
                ..
            } => {
                let th = &self.thresholds[&item.n];
                let thr = match base {
                    Base::Split => th.split,
                    Base::SplitPlus => match th.plus {
                        Some(t) => t,
                        None => return Ok(None),
                    },
                };
                let eps = self.spec.epsilon;
                let mut mu = self.mu(g, mu_cache)?;
                rec.threshold = Some(thr);
                let exceptional = mu >= thr - eps && is_exceptional(g, *base, k, th);
                let class = if exceptional && *exclude {
                    Classification::Exceptional
                } else if exceptional {
                    // The extremal graph itself is covered when not excluded.
                    Classification::Qualifying
                } else if mu >= thr + eps {
                    Classification::Qualifying
                } else if mu <= thr - eps {
                    Classification::NonQualifying
                } else {
                    mu = precise_radius(g)?;
                    if (mu - thr).abs() < eps {
                        Classification::Boundary
                    } else if mu > thr {
                        Classification::Qualifying
                    } else {
                        Classification::NonQualifying
                    }
                };
                rec.mu = Some(mu);
                rec.class = class;
                if class == Classification::Boundary {
                    // Informational only: boundary graphs are neither passes
                    // nor violations.
                    let missing = self.missing_patterns(g, patterns, false, None)?;
                    rec.detail = if missing.is_empty() {
                        "boundary; all patterns present".into()
                    } else {
                        format!("boundary; missing {}", missing.join(" "))
                    };
                }
                if class != Classification::Qualifying {
                    return Ok(Some(rec));
                }
                rec.hypothesis_holds = true;
                rec.missing = self.missing_patterns(g, patterns, *proof_guided, Some(out))?;
                for p in patterns {
                    out.frequencies.push((st.name(), p.label.clone(), !rec.missing.contains(&p.label)));
                }
                rec.conclusion_holds = Some(rec.missing.is_empty());
                rec.violation = !rec.missing.is_empty();
                Ok(Some(rec))
            }
            Statement::Lemma(lemma) => {
                let connected_only = matches!(lemma, LemmaCheck::PathTuran { .. } | LemmaCheck::BroomTuran { .. });
                if connected_only && (!g.is_connected() || g.n() < k + 2) {
                    return Ok(None);
                }
                if matches!(lemma, LemmaCheck::SumLongestPath) && g.n() > sptree::embed::DEFAULT_PATH_CAP {
                    return Ok(None);
                }
                let v = check_lemma_with_budget(g, lemma, self.spec.budget)?;
                rec.class = if v.hypothesis_holds {
                    Classification::Qualifying
                } else {
                    Classification::NonQualifying
                };
                rec.hypothesis_holds = v.hypothesis_holds;
                rec.conclusion_holds = Some(v.conclusion_holds);
                rec.violation = v.violation;
                rec.detail = v.detail;
                Ok(Some(rec))
            }
            Statement::SpectralBounds => {
                let mu = self.mu(g, mu_cache)?;
                let (n, m, d) = (g.n(), g.edge_count(), g.min_degree());
                let b8 = bound_min_degree::<f64>(n, m, d)?;
                let b9 = bound_edges::<f64>(m);
                rec.mu = Some(mu);
                rec.threshold = Some(b8.min(b9));
                rec.class = Classification::Qualifying;
                rec.hypothesis_holds = true;
                let ok = mu <= b8 + BOUND_SLACK && mu <= b9 + BOUND_SLACK;
                rec.conclusion_holds = Some(ok);
                rec.violation = !ok;
                rec.detail = format!("min-degree bound {b8}, edge bound {b9}");
                Ok(Some(rec))
            }
        }
    }
}

pub fn run_campaign(spec: &CampaignSpec) -> Result<VerificationReport, HarnessError> {
    spec.validate()?;
    let start = Instant::now();
    let stmts = statements(spec)?;
    let mut thresholds = BTreeMap::new();
    let spectral = stmts.iter().any(|s| matches!(s, Statement::Spectral { .. }));
    if spectral {
        for n in spec.n_min..=spec.n_max {
            thresholds.insert(n, thresholds_for(n, spec.k)?);
        }
    }
    let mut items = Vec::new();
    for n in spec.n_min..=spec.n_max {
        items.extend(spec.source.materialise(n, spec.k, spec.extended)?);
    }
    let eval = Evaluator {
        spec,
        statements: &stmts,
        thresholds: &thresholds,
    };
    let outcomes: Vec<ItemOutcome> = if spec.shards == 1 {
        items.iter().map(|it| eval.evaluate(it)).collect()
    } else {
        let len = items.len();
        let ranges: Vec<(usize, usize)> = (0..spec.shards)
            .map(|s| (len * s / spec.shards, len * (s + 1) / spec.shards))
            .collect();
        ranges
            .into_par_iter()
            .flat_map_iter(|(a, b)| items[a..b].iter().map(|it| eval.evaluate(it)).collect::<Vec<_>>())
            .collect()
    };

    let mut report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        spec: spec.clone(),
        statements: stmts.iter().map(|s| s.name()).collect(),
        totals: Totals {
            graphs_scanned: items.len(),
            ..Totals::default()
        },
        records: Vec::new(),
        violations: Vec::new(),
        thresholds: Vec::new(),
        pattern_frequencies: Vec::new(),
        spider_branches: BTreeMap::new(),
        errors: Vec::new(),
        timings: None,
    };
    let mut per_n: BTreeMap<(String, usize), NStat> = BTreeMap::new();
    let mut freq: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
    for o in outcomes {
        for (name, n, hyp, viol, boundary, exceptional) in o.evaluations {
            let t = &mut report.totals;
            t.evaluations += 1;
            t.hypothesis_satisfying += usize::from(hyp);
            t.boundary += usize::from(boundary);
            t.exceptional += usize::from(exceptional);
            let s = per_n.entry((name, n)).or_insert(NStat {
                n,
                ..NStat::default()
            });
            s.evaluated += 1;
            s.hypothesis += usize::from(hyp);
            s.violations += usize::from(viol);
        }
        for (st, p, found) in o.frequencies {
            let e = freq.entry((st, p)).or_default();
            e.0 += 1;
            e.1 += usize::from(found);
        }
        for b in o.branches {
            *report.spider_branches.entry(b).or_default() += 1;
        }
        report.records.extend(o.records);
        report.errors.extend(o.errors);
    }
    report.records.sort_by(|a, b| {
        (a.n, &a.graph6, a.sample, &a.statement).cmp(&(b.n, &b.graph6, b.sample, &b.statement))
    });
    report.errors.sort_by(|a, b| {
        (a.n, &a.graph6, a.sample, &a.statement).cmp(&(b.n, &b.graph6, b.sample, &b.statement))
    });
    report.violations = report.records.iter().filter(|r| r.violation).cloned().collect();
    report.totals.violations = report.violations.len();
    report.totals.hard_violations = report.violations.iter().filter(|r| !r.advisory).count();
    report.totals.errors = report.errors.len();

    for st in &stmts {
        let name = st.name();
        let rows: Vec<NStat> = per_n
            .iter()
            .filter(|((s, _), _)| *s == name)
            .map(|(_, v)| v.clone())
            .collect();
        let mut smallest_clean = None;
        for row in rows.iter().rev() {
            if row.violations > 0 {
                break;
            }
            smallest_clean = Some(row.n);
        }
        report.thresholds.push(ThresholdEstimate {
            statement: name,
            advisory: st.advisory(),
            per_n: rows,
            smallest_clean_n: smallest_clean,
        });
    }
    report.pattern_frequencies = freq
        .into_iter()
        .map(|((statement, pattern), (checked, contained))| PatternFrequency {
            statement,
            pattern,
            checked,
            contained,
        })
        .collect();
    report.timings = Some(Timings {
        wall_ms: start.elapsed().as_millis() as u64,
    });
    Ok(report)
}

fn thresholds_for(n: usize, k: usize) -> Result<Thresholds, HarnessError> {
    thresholds(n, k)
}

/// Re-evaluates one recorded verdict from its graph6 key alone.
pub fn recheck_record(spec: &CampaignSpec, rec: &VerdictRecord) -> Result<Option<VerdictRecord>, HarnessError> {
    let g = sptree::decode_graph6(&rec.graph6)?;
    let stmts = statements(spec)?;
    let st = stmts
        .iter()
        .find(|s| s.name() == rec.statement)
        .ok_or_else(|| HarnessError::InvalidSpec(format!("unknown statement {}", rec.statement)))?;
    let mut thresholds = BTreeMap::new();
    if matches!(st, Statement::Spectral { .. }) {
        thresholds.insert(g.n(), thresholds_for(g.n(), spec.k)?);
    }
    let eval = Evaluator {
        spec,
        statements: std::slice::from_ref(st),
        thresholds: &thresholds,
    };
    let item = SourceItem {
        n: g.n(),
        index: rec.sample,
        graph: g,
    };
    let mut out = eval.evaluate(&item);
    if let Some(e) = out.errors.pop() {
        return Err(HarnessError::InvalidSpec(e.message));
    }
    Ok(out.records.pop())
}
