//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! limit. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use sptree::embed::{all_trees_of_order, contains_tree, free_tree_code};
use sptree::enumerate::{all_graphs, random_graph, RandomModel};
use sptree::spectral::{
    bound_edges, bound_min_degree, lemma1_certificate, mu_s_closed, mu_s_plus_bounds, spectral_radius,
    CertificateVerdict,
};
use sptree::turan::{check_lemma, edge_threshold_s_plus, LemmaCheck};
use sptree::{canonical_key, decode_graph6, encode_graph6, FamilySpec, Graph};
use sptree_harness::report::{render_report, Classification, ReportFormat, SCHEMA_VERSION};
use sptree_harness::{run_campaign, CampaignId, CampaignSpec, VerificationReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build(spec: FamilySpec) -> Graph {
    spec.build().expect("valid family")
}

fn split(n: usize, k: usize) -> Graph {
    build(FamilySpec::CompleteSplit { n, k })
}

fn split_plus(n: usize, k: usize) -> Graph {
    build(FamilySpec::CompleteSplitPlus { n, k })
}

fn grid() -> impl Iterator<Item = (usize, usize)> {
    (1..=5).flat_map(|k| (k + 2..=60).map(move |n| (n, k)))
}

fn closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for (n, k) in grid() {
        let mu = spectral_radius(&split(n, k), 1e-12).map_err(|e| e.to_string())?.mu;
        let cf: f64 = mu_s_closed(n, k).map_err(|e| e.to_string())?;
        worst = worst.max((mu - cf).abs());
        ensure((mu - cf).abs() <= 1e-8, || format!("n={n} k={k}: {mu} vs {cf}"))?;
    }
    let m52: f64 = spectral_radius(&split(5, 2), 1e-12).unwrap().mu;
    let m82: f64 = spectral_radius(&split(8, 2), 1e-12).unwrap().mu;
    ensure((m52 - 3.0).abs() <= 1e-8 && mu_s_closed::<f64>(5, 2).unwrap() == 3.0, || format!("mu(S_5,2) = {m52}"))?;
    ensure((m82 - 4.0).abs() <= 1e-8 && mu_s_closed::<f64>(8, 2).unwrap() == 4.0, || format!("mu(S_8,2) = {m82}"))?;
    Ok(format!("{} grid points, max deviation {worst:.1e}", grid().count()))
}

fn sandwich() -> Outcome {
    let mut checked = 0;
    for (n, k) in grid() {
        let Ok((lo, hi)) = mu_s_plus_bounds::<f64>(n, k) else { continue };
        let mu = spectral_radius(&split_plus(n, k), 1e-12).unwrap().mu;
        ensure(lo < mu && mu < hi, || format!("n={n} k={k}: {mu} not in ({lo}, {hi})"))?;
        checked += 1;
    }
    let (lo, hi) = mu_s_plus_bounds::<f64>(20, 2).unwrap();
    ensure((lo - 6.520797).abs() < 1e-6 && (hi - 6.604131).abs() < 1e-6, || format!("(20,2): ({lo}, {hi})"))?;
    Ok(format!("{checked} grid points strictly inside; (20,2) -> ({lo:.6}, {hi:.6})"))
}

fn certificate() -> Outcome {
    for (n, k) in grid() {
        let c = lemma1_certificate::<f64>(&split(n, k), (k - 1) as u64, (k * (n - k)) as u64)
            .map_err(|e| e.to_string())?;
        ensure(c.column_sums.iter().all(|&s| s == 0), || format!("n={n} k={k}: {:?}", c.column_sums))?;
        ensure(c.verdict == CertificateVerdict::ProvesEquality, || format!("n={n} k={k}: {:?}", c.verdict))?;
    }
    Ok(format!("{} grid points, all column sums exactly 0", grid().count()))
}

fn broom_tables() -> Outcome {
    let mut parts = Vec::new();
    for k in [2, 3] {
        let order = 2 * k + 3;
        let s = split(30, k);
        let sp = split_plus(30, k);
        let mut miss_s = BTreeSet::new();
        let mut miss_sp = BTreeSet::new();
        for b in 1..order {
            let t = order - b;
            let broom = build(FamilySpec::Broom { s: b, t });
            if contains_tree(&s, &broom).map_err(|e| e.to_string())?.is_none() {
                miss_s.insert((b, t));
            }
            if contains_tree(&sp, &broom).map_err(|e| e.to_string())?.is_none() {
                miss_sp.insert((b, t));
            }
        }
        let want_s: BTreeSet<_> = [(1, 2 * k + 2), (2, 2 * k + 1)].into();
        let want_sp: BTreeSet<_> = [(1, 2 * k + 2)].into();
        ensure(miss_s == want_s, || format!("k={k}: S misses {miss_s:?}"))?;
        ensure(miss_sp == want_sp, || format!("k={k}: S+ misses {miss_sp:?}"))?;
        parts.push(format!("k={k}: S misses {miss_s:?}, S+ misses {miss_sp:?}"));
    }
    Ok(parts.join("; "))
}

fn plus_witness() -> Outcome {
    let broom = build(FamilySpec::Broom { s: 2, t: 5 });
    for n in [10, 20] {
        let host = split_plus(n, 2);
        let emb = contains_tree(&host, &broom).map_err(|e| e.to_string())?;
        let emb = emb.ok_or_else(|| format!("no B(2,5) in S+_{{{n},2}}"))?;
        ensure(emb.validate(&broom, &host), || format!("invalid embedding for n={n}"))?;
    }
    for (n, k) in grid() {
        let want = k * n - k * (k + 1) / 2 + 1;
        let e = split_plus(n, k).edge_count();
        ensure(e == want, || format!("e(S+_{{{n},{k}}}) = {e}, formula {want}"))?;
        ensure(edge_threshold_s_plus(n, k).unwrap() == want, || format!("threshold at ({n},{k})"))?;
    }
    Ok("valid embeddings at n = 10, 20; edge formula on the grid".into())
}

fn count_violations(graphs: &[Graph], lemma: &LemmaCheck) -> Result<usize, String> {
    graphs
        .par_iter()
        .map(|g| check_lemma(g, lemma).map(|v| usize::from(v.violation)).map_err(|e| e.to_string()))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn lemma_suites() -> Outcome {
    let upto = |max: usize, connected: bool| -> Vec<Graph> {
        (1..=max).flat_map(|n| all_graphs(n, connected).unwrap()).collect()
    };
    let connected7 = upto(7, true);
    let all7 = upto(7, false);
    let all8 = upto(8, false);

    let l5 = count_violations(&connected7, &LemmaCheck::SumLongestPath)?;
    let mut l7 = 0;
    for t in [4, 5] {
        l7 += count_violations(&all8, &LemmaCheck::Spider3ErdosSos { t })?;
    }
    let mut l2 = 0;
    for t in 2..=6 {
        l2 += count_violations(&all8, &LemmaCheck::PathTuranBound { t })?;
    }
    let bounds = all7
        .par_iter()
        .filter(|g| {
            let mu = spectral_radius(g, 1e-12).unwrap().mu;
            let b8: f64 = bound_min_degree(g.n(), g.edge_count(), g.min_degree()).unwrap();
            let b9: f64 = bound_edges(g.edge_count());
            mu > b8 + 1e-9 || mu > b9 + 1e-9
        })
        .count();
    ensure(l5 + l7 + l2 + bounds == 0, || {
        format!("violations: sum-longest-path {l5}, spiders {l7}, path bound {l2}, spectral bounds {bounds}")
    })?;
    Ok(format!(
        "0 violations over {} connected (n<=7), {} graphs (n<=8), {} graphs (n<=7)",
        connected7.len(),
        all8.len(),
        all7.len()
    ))
}

/// Every injective map of the tree into the host, by brute force.
fn brute_force_contains(host: &Graph, tree: &Graph) -> bool {
    fn extend(host: &Graph, tree: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == tree.n() {
            return true;
        }
        for h in 0..host.n() {
            if used[h] || !(0..i).all(|j| !tree.has_edge(i, j) || host.has_edge(h, map[j])) {
                continue;
            }
            used[h] = true;
            map.push(h);
            if extend(host, tree, map, used) {
                return true;
            }
            map.pop();
            used[h] = false;
        }
        false
    }
    tree.n() <= host.n() && extend(host, tree, &mut Vec::new(), &mut vec![false; host.n()])
}

fn embedder_oracle() -> Outcome {
    let trees: Vec<Graph> = (1..=6).flat_map(|t| all_trees_of_order(t).unwrap()).collect();
    let (mut yes, mut disagreements) = (0, Vec::new());
    for i in 0..200u64 {
        let n = 1 + (i % 7) as usize;
        let p = 0.2 + 0.6 * ((i * 37 % 100) as f64 / 100.0);
        let host = random_graph(n, RandomModel::Probability(p), 1000 + i).map_err(|e| e.to_string())?;
        let tree = &trees[(i as usize * 7919) % trees.len()];
        let fast = contains_tree(&host, tree).map_err(|e| e.to_string())?;
        if let Some(e) = &fast {
            ensure(e.validate(tree, &host), || format!("instance {i}: invalid witness"))?;
        }
        let slow = brute_force_contains(&host, tree);
        yes += usize::from(slow);
        if fast.is_some() != slow {
            disagreements.push(i);
        }
    }
    ensure(disagreements.is_empty(), || format!("disagreements at {disagreements:?}"))?;
    Ok(format!("200 instances agree ({yes} contained)"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Isomorphism classes of labelled graphs by minimising the adjacency
/// bitstring over all relabellings.
fn brute_force_graph_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&e| e == (a, b)).unwrap()
    };
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut classes = BTreeSet::new();
    let mut seen = vec![false; 1 << pairs.len()];
    for mask in 0usize..1 << pairs.len() {
        if seen[mask] {
            continue;
        }
        let mut min = mask;
        for r in &relabel {
            let img = r.iter().enumerate().fold(0, |acc, (i, &j)| acc | ((mask >> i & 1) << j));
            seen[img] = true;
            min = min.min(img);
        }
        classes.insert(min);
    }
    classes.len()
}

/// Centre-rooted AHU string of a tree given by adjacency lists.
fn ahu(adj: &[Vec<usize>]) -> String {
    fn enc(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| enc(adj, w, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| enc(adj, c, usize::MAX)).min().unwrap()
        + &if layer.len() == 2 {
            // Bicentral: root at the central edge, both halves sorted.
            let (a, b) = (layer[0], layer[1]);
            let mut h = [enc(adj, a, b), enc(adj, b, a)];
            h.sort();
            h.concat()
        } else {
            String::new()
        }
}

/// Free trees on `t` vertices via Prüfer sequences.
fn brute_force_tree_count(t: usize) -> usize {
    let mut classes = BTreeSet::new();
    let len = t - 2;
    let mut seq = vec![0usize; len];
    loop {
        let mut degree = vec![1usize; t];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut adj = vec![Vec::new(); t];
        for &x in &seq {
            let leaf = (0..t).find(|&v| degree[v] == 1).unwrap();
            adj[leaf].push(x);
            adj[x].push(leaf);
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..t).filter(|&v| degree[v] == 1).collect();
        adj[rest[0]].push(rest[1]);
        adj[rest[1]].push(rest[0]);
        classes.insert(ahu(&adj));

        let mut i = 0;
        while i < len && seq[i] == t - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
        seq[i] += 1;
    }
    classes.len()
}

fn enumeration_counts() -> Outcome {
    let oracle: Vec<usize> = (1..=6).map(brute_force_graph_count).collect();
    let ours: Vec<usize> = (1..=6).map(|n| all_graphs(n, false).unwrap().count()).collect();
    ensure(oracle == ours, || format!("graphs: oracle {oracle:?}, enumerator {ours:?}"))?;
    ensure(ours == [1, 2, 4, 11, 34, 156], || format!("graph counts {ours:?}"))?;
    let oracle: Vec<usize> = (6..=8).map(brute_force_tree_count).collect();
    let ours: Vec<usize> = (6..=8).map(|t| all_trees_of_order(t).unwrap().len()).collect();
    ensure(oracle == ours, || format!("trees: oracle {oracle:?}, generator {ours:?}"))?;
    ensure(ours == [6, 11, 23], || format!("tree counts {ours:?}"))?;
    for t in 6..=8 {
        let codes: BTreeSet<String> =
            all_trees_of_order(t).unwrap().iter().map(|g| free_tree_code(g).unwrap()).collect();
        ensure(codes.len() == ours[t - 6], || format!("duplicate trees at order {t}"))?;
    }
    Ok("graphs 1,2,4,11,34,156; trees 6,11,23".into())
}

fn conjecture_campaign() -> Outcome {
    let spec = CampaignSpec::new(CampaignId::ConjectureA, 2, 8);
    let mut serial = run_campaign(&spec).map_err(|e| e.to_string())?;
    let mut sharded_spec = spec.clone();
    sharded_spec.shards = 6;
    let sharded = run_campaign(&sharded_spec).map_err(|e| e.to_string())?;
    ensure(serial.violation_keys() == sharded.violation_keys(), || "sharded violations differ".into())?;
    ensure(serial.records == sharded.records, || "sharded records differ".into())?;

    let s82 = canonical_key(&split(8, 2)).unwrap();
    let exceptional: Vec<_> = serial.records.iter().filter(|r| r.class == Classification::Exceptional).collect();
    ensure(exceptional.len() == 1, || format!("{} exceptional records", exceptional.len()))?;
    let ex = exceptional[0];
    let key = canonical_key(&decode_graph6(&ex.graph6).unwrap()).unwrap();
    ensure(key == s82, || format!("exceptional graph {} is not S_8,2", ex.graph6))?;
    ensure(ex.mu.is_some_and(|m| (m - 4.0).abs() < 1e-9), || format!("mu {:?}", ex.mu))?;
    ensure(!ex.violation, || "exceptional graph reported as violation".into())?;

    // Qualifying means mu >= threshold - eps; everything else recorded is
    // boundary or exceptional.
    for r in &serial.records {
        let mu = r.mu.unwrap();
        match r.class {
            Classification::Qualifying => ensure(mu >= 4.0 - spec.epsilon, || format!("{} qualifies at {mu}", r.graph6))?,
            Classification::Boundary => {
                ensure((mu - 4.0).abs() < spec.epsilon && !r.violation, || format!("boundary {}", r.graph6))?;
                ensure(canonical_key(&decode_graph6(&r.graph6).unwrap()).unwrap() != s82, || "S_8,2 as boundary".into())?;
            }
            _ => {}
        }
    }
    for v in &serial.violations {
        let g = decode_graph6(&v.graph6).map_err(|e| e.to_string())?;
        ensure(encode_graph6(&g) == v.graph6, || "violation key does not round-trip".into())?;
        let again = sptree_harness::campaign::recheck_record(&spec, v).map_err(|e| e.to_string())?;
        ensure(again.as_ref().is_some_and(|r| r.violation), || format!("violation {} not reproduced", v.graph6))?;
    }
    let t = &serial.totals;
    ensure(t.graphs_scanned == 12346 && t.exceptional == 1, || format!("totals {t:?}"))?;
    ensure(t.violations == serial.violations.len(), || "inconsistent totals".into())?;

    serial.timings = None;
    let a = render_report(&serial, ReportFormat::Json).map_err(|e| e.to_string())?;
    let b = render_report(&serial, ReportFormat::Json).map_err(|e| e.to_string())?;
    ensure(a == b, || "JSON rendering not deterministic".into())?;
    let mut rerun = run_campaign(&spec).map_err(|e| e.to_string())?;
    rerun.timings = None;
    ensure(render_report(&rerun, ReportFormat::Json).unwrap() == a, || "re-run report differs".into())?;
    let parsed: VerificationReport = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
    ensure(parsed.schema_version == SCHEMA_VERSION && parsed == serial, || "schema round trip failed".into())?;
    let csv = render_report(&serial, ReportFormat::Csv).map_err(|e| e.to_string())?;
    let rows = String::from_utf8(csv).unwrap().lines().count();
    ensure(rows == serial.records.len() + 2, || format!("csv has {rows} lines"))?;

    Ok(format!(
        "{} graphs, {} qualifying, {} boundary (mu = 4 exactly), S_8,2 unique exceptional, {} advisory violations",
        t.graphs_scanned, t.hypothesis_satisfying, t.boundary, t.violations
    ))
}

fn graph6_conformance() -> Outcome {
    let mut total = 0;
    for n in 1..=7 {
        for g in all_graphs(n, false).unwrap() {
            let s = encode_graph6(&g);
            ensure(decode_graph6(&s).map_err(|e| e.to_string())? == g, || format!("round trip failed for {s}"))?;
            total += 1;
        }
    }
    let petersen = Graph::from_edges(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap();
    let cycle5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let fixtures: Vec<(Graph, String)> = vec![
        (Graph::complete(1), "@".into()),
        (Graph::complete(2), "A_".into()),
        (build(FamilySpec::Path(3)), "Bg".into()),
        (Graph::complete(4), "C~".into()),
        (cycle5, "Dhc".into()),
        (Graph::empty(7), "F????".into()),
        (Graph::complete(8), "G~~~~{".into()),
        (build(FamilySpec::Star(5)), "Esa?".into()),
        (build(FamilySpec::Path(10)), "IhCGGC@?G".into()),
        (petersen, "IheA@GUAo".into()),
        (Graph::complete(63), format!("~??~{}w", "~".repeat(325))),
        (Graph::empty(64), format!("~?@?{}", "?".repeat(336))),
    ];
    for (g, want) in &fixtures {
        let got = encode_graph6(g);
        ensure(&got == want, || format!("n={}: {got} != {want}", g.n()))?;
        ensure(&decode_graph6(want).unwrap() == g, || format!("decode {want}"))?;
    }
    Ok(format!("{total} graphs round-trip; {} fixtures byte-exact", fixtures.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("closed form vs eigensolver", 10, closed_form),
        ("S+ sandwich", 10, sandwich),
        ("quotient equality certificate", 5, certificate),
        ("broom exception tables", 30, broom_tables),
        ("S+ broom witness and edge count", 5, plus_witness),
        ("unconditional lemma suites", 600, lemma_suites),
        ("embedder vs brute force", 60, embedder_oracle),
        ("enumeration regressions", 60, enumeration_counts),
        ("conjecture campaign report", 600, conjecture_campaign),
        ("graph6 conformance", 30, graph6_conformance),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (status, msg) = match result {
            Ok(msg) if elapsed <= limit => ("PASS", msg),
            Ok(msg) => ("FAIL", format!("{msg}; exceeded {}s", limit.as_secs())),
            Err(msg) => ("FAIL", msg),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} [{:.2}s / {}s] {name}: {msg}",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
