use std::collections::HashSet;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use vizing_core::cache::GammaCache;
use vizing_core::canon::graph_key;
use vizing_core::criteria::{
    bipartition_upper_bound, degree_lower_bound, finite_remainder, imbalance_criterion, imbalance_vs_arbitrary,
    literature_flags, published_threshold, threshold_condition, threshold_table, LiteratureFlags,
};
use vizing_core::density::Density;
use vizing_core::domination::gamma_exact;
use vizing_core::error::Error;
use vizing_core::graph::{bipartition, cartesian_product_capped, BipartiteGraph, Graph};
use vizing_core::kregular::{
    enumerate_kreg, enumerate_kreg_modulo_transpose, oracle_gamma, row_key, scan_record, summarize, KPlus2Case,
    ScanRecord,
};
use vizing_core::rational::{parse_rational, ratio, Rational};
use vizing_core::transform::{audit_products, constructive_inequality_check, iterate_leaves};

use crate::input::{load, Loaded};
use crate::output::{finding, Emitter};
use crate::{Failure, Opts};

/// Classes whose records are computed and written together.
const SCAN_CHUNK: usize = 64;

fn open_cache(opts: &Opts) -> Result<Option<GammaCache>, Failure> {
    opts.cache
        .as_deref()
        .map(|p| GammaCache::open(p).map_err(|e| Failure::Input(format!("cache: {e}"))))
        .transpose()
}

fn nonempty(loaded: Loaded, what: &str) -> Result<Loaded, Failure> {
    if loaded.graph.order() == 0 {
        return Err(Failure::Input(format!("{what} has no vertices")));
    }
    Ok(loaded)
}

fn within(opts: &Opts, what: &'static str, order: usize) -> Result<(), Failure> {
    if order > opts.max_vertices {
        return Err(Error::Capacity {
            what,
            requested: order,
            limit: opts.max_vertices,
        }
        .into());
    }
    Ok(())
}

fn q(r: &Rational) -> String {
    r.to_string()
}

#[derive(Serialize)]
struct GammaReport {
    order: usize,
    edges: usize,
    gamma: usize,
    witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_labels: Option<Vec<String>>,
    density: String,
    degree_lower_bound: usize,
    bipartite: bool,
    bipartition_upper_bound: Option<usize>,
    connected: bool,
}

pub fn gamma(opts: &Opts, out: &mut Emitter, path: &Path) -> Result<(), Failure> {
    let loaded = nonempty(load(path, opts.input_format)?, "graph")?;
    let g = &loaded.graph;
    within(opts, "graph order", g.order())?;
    let (gamma, witness) = gamma_exact(g);
    if let Some(cache) = open_cache(opts)? {
        cache.insert(graph_key(g), gamma);
    }
    let bip = bipartition(g);
    let witness = witness.vertices.to_vec();
    out.emit(&GammaReport {
        order: g.order(),
        edges: g.edge_count(),
        gamma,
        witness_labels: loaded.label_set(&witness),
        witness,
        density: q(&ratio(gamma, g.order())),
        degree_lower_bound: degree_lower_bound(g),
        bipartite: bip.is_some(),
        bipartition_upper_bound: bip.as_ref().map(|b| bipartition_upper_bound(b).value),
        connected: g.is_connected(),
    })
}

#[derive(Serialize)]
struct VizingOut {
    order_g: usize,
    order_h: usize,
    order_product: usize,
    gamma_g: usize,
    gamma_h: usize,
    gamma_product: usize,
    holds: bool,
    rho_g: String,
    rho_h: String,
    rho_product: String,
    density_holds: bool,
    witness_g: Vec<usize>,
    witness_h: Vec<usize>,
    /// absent when γ(G□H) came from the cache
    witness_product: Option<Vec<usize>>,
    criteria: Vec<Value>,
    literature: LiteratureFlags,
}

fn not_applicable(name: &str, note: String) -> Value {
    json!({"name": name, "applicable": false, "note": note})
}

fn applicable(v: impl Serialize, scope: &str) -> Value {
    let mut v = serde_json::to_value(v).expect("verdicts serialize");
    if let Value::Object(m) = &mut v {
        m.insert("applicable".into(), Value::Bool(true));
        m.insert("scope".into(), Value::String(scope.into()));
    }
    v
}

/// (k, n) when `bg` is k-regular with |A| = |B| = n.
fn balanced_regular(bg: &BipartiteGraph) -> Option<(usize, usize)> {
    let g = bg.graph();
    let k = g.degree(0);
    let regular = (0..g.order()).all(|v| g.degree(v) == k);
    (regular && k >= 1 && bg.side_a().len() == bg.side_b().len()).then(|| (k, bg.side_a().len()))
}

fn criteria_for(g: &Graph, h: &Graph, rho_g: &Density, rho_h: &Density) -> Vec<Value> {
    let (bg, bh) = (bipartition(g), bipartition(h));
    let mut out = Vec::new();
    match (&bg, &bh) {
        (Some(a), Some(b)) => match imbalance_criterion(a, b) {
            Ok(v) => out.push(applicable(v, "G,H")),
            Err(e) => out.push(not_applicable("imbalance", e.to_string())),
        },
        _ => out.push(not_applicable("imbalance", "both factors must be bipartite".into())),
    }
    for (scope, x, other, rho_other) in [("G vs H", &bg, h, rho_h), ("H vs G", &bh, g, rho_g)] {
        match x {
            Some(bx) => match imbalance_vs_arbitrary(bx, other.max_degree(), &rho_other.value) {
                Ok(v) => out.push(applicable(v, scope)),
                Err(e) => out.push(not_applicable("imbalance-arbitrary", format!("{scope}: {e}"))),
            },
            None => out.push(not_applicable("imbalance-arbitrary", format!("{scope}: first factor not bipartite"))),
        }
    }
    let regular = (
        bg.as_ref().and_then(balanced_regular),
        bh.as_ref().and_then(balanced_regular),
    );
    match regular {
        (Some((k, n_g)), Some((kh, n_h))) if k == kh => match threshold_condition(k, n_g, n_h) {
            Ok(v) => out.push(applicable(v, "G,H")),
            Err(e) => out.push(not_applicable("threshold", e.to_string())),
        },
        _ => out.push(not_applicable(
            "threshold",
            "needs balanced k-regular bipartite factors with equal k".into(),
        )),
    }
    out
}

pub fn check_vizing(opts: &Opts, out: &mut Emitter, g_path: &Path, h_path: &Path) -> Result<(), Failure> {
    let lg = nonempty(load(g_path, opts.input_format)?, "G")?;
    let lh = nonempty(load(h_path, opts.input_format)?, "H")?;
    let (g, h) = (&lg.graph, &lh.graph);
    let product = cartesian_product_capped(g, h, opts.max_vertices)?;
    let cache = open_cache(opts)?;
    let (gamma_g, witness_g) = gamma_exact(g);
    let (gamma_h, witness_h) = gamma_exact(h);
    let cached = cache.as_ref().map(|c| (c, graph_key(&product.graph)));
    let (gamma_product, witness_product) = match cached.as_ref().and_then(|(c, key)| c.get(key)) {
        Some(v) => (v, None),
        None => {
            let (v, w) = gamma_exact(&product.graph);
            (v, Some(w.vertices.to_vec()))
        }
    };
    if let Some((c, key)) = cached {
        c.insert(key, gamma_product);
        c.insert(graph_key(g), gamma_g);
        c.insert(graph_key(h), gamma_h);
    }
    let rho_g = Density::new(gamma_g, g.order());
    let rho_h = Density::new(gamma_h, h.order());
    let rho_p = Density::new(gamma_product, product.graph.order());
    let holds = gamma_product >= gamma_g * gamma_h;
    let density_holds = rho_p.value >= &rho_g.value * &rho_h.value;
    let report = VizingOut {
        order_g: g.order(),
        order_h: h.order(),
        order_product: product.graph.order(),
        gamma_g,
        gamma_h,
        gamma_product,
        holds,
        rho_g: q(&rho_g.value),
        rho_h: q(&rho_h.value),
        rho_product: q(&rho_p.value),
        density_holds,
        witness_g: witness_g.vertices.to_vec(),
        witness_h: witness_h.vertices.to_vec(),
        witness_product,
        criteria: criteria_for(g, h, &rho_g, &rho_h),
        literature: literature_flags(g, h, gamma_g, gamma_h),
    };
    out.emit(&report)?;
    if !holds || holds != density_holds {
        out.emit(&finding(
            "vizing",
            json!({"gamma_g": gamma_g, "gamma_h": gamma_h, "gamma_product": gamma_product, "density_holds": density_holds}),
        ))?;
        return Err(Failure::Finding(format!(
            "gamma(GxH) = {gamma_product}, gamma(G)gamma(H) = {}",
            gamma_g * gamma_h
        )));
    }
    Ok(())
}

fn resume_keys(path: &Path) -> Result<HashSet<String>, Failure> {
    if !path.exists() {
        return Ok(HashSet::new());
    }
    let file = std::fs::File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut keys = HashSet::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        // a torn final line from an interrupted run is skipped
        if let Ok(Value::Object(m)) = serde_json::from_str::<Value>(&line) {
            if let Some(Value::String(k)) = m.get("key") {
                keys.insert(k.clone());
            }
        }
    }
    Ok(keys)
}

fn record_findings(r: &ScanRecord) -> Result<Vec<Value>, Failure> {
    let mut found = Vec::new();
    if r.conj_violation {
        let oracle = oracle_gamma(r)?;
        found.push(finding(
            "conjectured-bound",
            json!({"key": r.key, "n": r.n, "k": r.k, "gamma": r.gamma, "bound": r.conj_bound,
                   "oracle_gamma": oracle, "confirmed": oracle > r.conj_bound}),
        ));
    }
    if r.order_violation {
        found.push(finding(
            "order-bound",
            json!({"key": r.key, "n": r.n, "k": r.k, "gamma": r.gamma, "bound": r.order_bound}),
        ));
    }
    if !r.obstruction.implication_holds {
        found.push(finding(
            "obstruction-implication",
            json!({"key": r.key, "n": r.n, "k": r.k, "rank": r.obstruction.rank,
                   "cover_witness": r.obstruction.cover_witness}),
        ));
    }
    if r.n > 1 && r.n <= r.k + 1 && r.gamma != 2 {
        found.push(finding("small-order-gamma", json!({"key": r.key, "n": r.n, "k": r.k, "gamma": r.gamma})));
    }
    if let Some(case) = r.k_plus_2 {
        let structural = case == KPlus2Case::Gamma4Form;
        if !(r.gamma == 3 || r.gamma == 4) || structural != (r.gamma == 4) || r.unique_form != (r.gamma == 4) {
            found.push(finding(
                "k-plus-2-classification",
                json!({"key": r.key, "n": r.n, "k": r.k, "gamma": r.gamma, "case": case, "unique_form": r.unique_form}),
            ));
        }
    }
    Ok(found)
}

pub fn scan(
    opts: &Opts,
    out: &mut Emitter,
    n: usize,
    k: usize,
    resume: Option<&Path>,
    transpose: bool,
) -> Result<(), Failure> {
    let classes = if transpose {
        enumerate_kreg_modulo_transpose(n, k, opts.allow_large)?
    } else {
        enumerate_kreg(n, k, opts.allow_large)?
    };
    let done = match resume {
        Some(p) => resume_keys(p)?,
        None => HashSet::new(),
    };
    let total = classes.len();
    let todo: Vec<_> = classes.into_iter().filter(|m| !done.contains(&row_key(m))).collect();
    let cache = open_cache(opts)?;
    let mut records = Vec::with_capacity(todo.len());
    let mut findings = 0;
    for chunk in todo.chunks(SCAN_CHUNK) {
        let batch: Vec<ScanRecord> = chunk.par_iter().map(scan_record).collect();
        for r in batch {
            out.emit(&r)?;
            for f in record_findings(&r)? {
                out.emit(&f)?;
                findings += 1;
            }
            if let Some(c) = &cache {
                c.insert(graph_key(&r.matrix.to_graph()), r.gamma);
            }
            records.push(r);
        }
        out.flush()?;
    }
    let summary = summarize(n, k, &records);
    let mut footer = serde_json::to_value(&summary).expect("summary serializes");
    if let Value::Object(m) = &mut footer {
        m.insert("total_classes".into(), json!(total));
        m.insert("skipped".into(), json!(total - todo.len()));
        m.insert("findings".into(), json!(findings));
        m.insert("transpose_quotient".into(), json!(transpose));
        if opts.paper_table {
            m.insert("published_threshold".into(), json!(published_threshold(k)));
            m.insert("in_finite_remainder".into(), json!(finite_remainder().pairs.contains(&(k, n))));
        }
    }
    out.emit(&json!({ "summary": footer }))?;
    if findings > 0 {
        return Err(Failure::Finding(format!("{findings} findings in scan ({n}, {k})")));
    }
    Ok(())
}

pub fn thresholds(opts: &Opts, out: &mut Emitter, kmax: usize) -> Result<(), Failure> {
    let table = threshold_table(kmax)?;
    for t in table.entries.values() {
        let note = match t.matches_published() {
            Some(false) if t.boundary => Some(format!(
                "published value {} differs; equality holds at n = {}",
                t.published.unwrap(),
                t.n
            )),
            Some(false) => Some(format!("published value {} differs", t.published.unwrap())),
            _ => None,
        };
        out.emit(&json!({
            "k": t.k,
            "n_k": t.n,
            "boundary": t.boundary,
            "auto": t.automatic,
            "published": t.published,
            "note": note,
        }))?;
    }
    out.emit(&json!({"auto_regime_from": table.auto_regime}))?;
    if opts.paper_table {
        let r = finite_remainder();
        let pairs: Vec<String> = r.pairs.iter().map(|(k, n)| format!("({k},{n})")).collect();
        out.emit(&json!({"finite_remainder": pairs, "structural_case": r.structural}))?;
    }
    Ok(())
}

pub fn transform(
    opts: &Opts,
    out: &mut Emitter,
    g_path: &Path,
    rho: Option<&str>,
    delta_h: Option<usize>,
    h_path: Option<&Path>,
    max_rounds: usize,
) -> Result<(), Failure> {
    let lg = nonempty(load(g_path, opts.input_format)?, "G")?;
    let bg = bipartition(&lg.graph).ok_or_else(|| Failure::Input("G is not bipartite".into()))?;
    within(opts, "graph order", bg.graph().order())?;
    let h = match h_path {
        Some(p) => Some(nonempty(load(p, opts.input_format)?, "H")?.graph),
        None => None,
    };
    let rho_h = match (rho, &h) {
        (Some(s), _) => parse_rational(s).ok_or_else(|| Failure::Input(format!("bad density {s:?}, expected p/q")))?,
        (None, Some(h)) => ratio(gamma_exact(h).0, h.order()),
        (None, None) => return Err(Failure::Input("pass --rho or --h".into())),
    };
    if rho_h < ratio(0, 1) || rho_h > ratio(1, 1) {
        return Err(Failure::Input(format!("density {rho_h} outside [0, 1]")));
    }
    let delta = match (delta_h, &h) {
        (Some(d), _) => d,
        (None, Some(h)) => h.max_degree(),
        (None, None) => return Err(Failure::Input("pass --delta-h or --h".into())),
    };
    let trace = iterate_leaves(&bg, delta, &rho_h, max_rounds)?;
    if !trace.in_hypothesis {
        out.emit(&json!({
            "hypothesis_met": false,
            "gate_equality": trace.gate_equality,
            "note": "hypothesis not met: no minimum dominating set has a side share exceeding rho_H",
        }))?;
        return Ok(());
    }
    out.emit(&trace)?;
    let mut problems = Vec::new();
    if !trace.gamma_invariant {
        problems.push("gamma changed along the trace".to_string());
    }
    if let (Some(last), Some(bound)) = (trace.final_round, trace.round_bound) {
        if last > bound {
            problems.push(format!("terminated at round {last}, beyond the slope bound {bound}"));
        }
    }
    if let Some(h) = &h {
        let report = constructive_inequality_check(&bg, h, opts.max_vertices)?;
        out.emit(&json!({ "constructive": report }))?;
        if report.holds == Some(false) {
            problems.push("constructive inequality failed".into());
        }
        let audit = audit_products(&trace, h, opts.max_vertices)?;
        if audit.iter().any(|r| !r.within_bound) {
            problems.push("product exceeded gamma(GxH) + m*|V(H)|".into());
        }
        if trace.final_round.is_some() && audit.len() == trace.rounds.len() && audit.last().is_some_and(|r| !r.vizing_holds) {
            problems.push("Vizing failed on the final round".into());
        }
        out.emit(&json!({ "product_audit": audit }))?;
    }
    if !problems.is_empty() {
        for p in &problems {
            out.emit(&finding("transform", json!({ "detail": p })))?;
        }
        return Err(Failure::Finding(problems.join("; ")));
    }
    Ok(())
}
