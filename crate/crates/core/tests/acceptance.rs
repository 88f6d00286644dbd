//! End-to-end acceptance run: one line per criterion, nonzero exit if any
//! criterion fails or exceeds its time limit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vizing_core::cache::GammaCache;
use vizing_core::canon::{connected_bipartite_graphs, connected_graphs};
use vizing_core::criteria::{
    bipartition_upper_bound, conjectured_kreg_bound, degree_lower_bound, imbalance_criterion, n_of_k,
    threshold_condition,
};
use vizing_core::density::{both_forms, rho};
use vizing_core::domination::{gamma_brute, gamma_exact, is_dominating};
use vizing_core::error::Error;
use vizing_core::graph::{bipartition, cartesian_product, BipartiteGraph, Graph};
use vizing_core::kregular::{
    canonical_key, enumerate_kreg, is_unique_form, matrix_vertices, oracle_gamma, scan_conjecture, BiadjacencyMatrix,
    ScanOptions,
};
use vizing_core::rank::{disjoint_row_cover, obstruction_report, rank_exact, RationalMatrix};
use vizing_core::rational::{int, Rational};
use vizing_core::transform::{audit_products, choose_side, constructive_inequality_check, iterate_leaves};

const CUBIC6: &str = "110100\n011010\n001101\n100110\n010011\n101001\n";
const BLOCK6: &str = "001111\n001111\n110011\n110011\n111100\n111100\n";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn thresholds() -> Outcome {
    let expected = [(3, 23), (5, 10), (6, 10), (7, 9), (8, 9)];
    for (k, n) in expected {
        let t = n_of_k(k).map_err(|e| e.to_string())?;
        ensure(t.n == n, || format!("N({k}) = {}, expected {n}", t.n))?;
        ensure(t.published == Some(n), || format!("N({k}) published value missing"))?;
    }
    let four = n_of_k(4).map_err(|e| e.to_string())?;
    ensure(four.n == 12 && four.boundary, || format!("N(4) = {} boundary={}", four.n, four.boundary))?;
    ensure(four.published == Some(13), || "N(4) published value missing".into())?;
    Ok(format!(
        "N(3..8) = 23, {}*, 10, 10, 9, 9; *N(4) = 12 is an equality boundary, published value {}",
        four.n,
        four.published.unwrap()
    ))
}

fn cubic_six() -> Outcome {
    let m = BiadjacencyMatrix::from_text(CUBIC6).map_err(|e| e.to_string())?;
    let g = m.to_graph();
    let (gamma, witness) = gamma_exact(&g);
    let oracle = gamma_brute(&g).map_err(|e| e.to_string())?;
    let rank = rank_exact(&RationalMatrix::from_binary(&m));
    let cover = disjoint_row_cover(&m, 2);
    let bound = conjectured_kreg_bound(6, 3).map_err(|e| e.to_string())?;
    // D = {a2, a5, b1, b4}
    let d = matrix_vertices(6, &[1, 4], &[0, 3]);
    ensure(gamma == 4 && oracle == 4, || format!("gamma solver={gamma} oracle={oracle}"))?;
    ensure(rank == 6, || format!("rank {rank}"))?;
    ensure(cover.is_none(), || format!("unexpected 2-row cover {cover:?}"))?;
    ensure(bound == gamma, || format!("2*ceil(6/3) = {bound} vs gamma {gamma}"))?;
    ensure(is_dominating(&g, &d), || "D = {a2,a5,b1,b4} does not dominate".into())?;
    Ok(format!(
        "gamma=4 (oracle 4), rank=6, no 2-row cover, bound 4 attained, D={{1,4,6,9}} dominates; solver witness {:?}",
        witness.vertices.to_vec()
    ))
}

fn block_six() -> Outcome {
    let m = BiadjacencyMatrix::from_text(BLOCK6).map_err(|e| e.to_string())?;
    let g = m.to_graph();
    let gamma = gamma_exact(&g).0;
    let oracle = gamma_brute(&g).map_err(|e| e.to_string())?;
    ensure(gamma == 4 && oracle == 4, || format!("gamma solver={gamma} oracle={oracle}"))?;
    ensure(is_unique_form(&m).unique_form, || "not recognised as the block form".into())?;
    let (records, summary) = scan_conjecture(6, 4, ScanOptions::default()).map_err(|e| e.to_string())?;
    let fours: Vec<_> = records.iter().filter(|r| r.gamma == 4).collect();
    ensure(fours.len() == 1, || format!("{} classes with gamma 4", fours.len()))?;
    ensure(fours[0].key == canonical_key(&m), || "the gamma-4 class is not the block form".into())?;
    Ok(format!("gamma=4 (oracle 4), unique form, 1 of {} classes at (6,4) has gamma 4", summary.classes))
}

fn n_equals_k() -> Outcome {
    let pairs = [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 5), (3, 5), (4, 6), (5, 7), (6, 8)];
    let mut classes = 0;
    let mut mismatches = Vec::new();
    for (k, n) in pairs {
        let (records, _) = scan_conjecture(n, k, ScanOptions { allow_large: true, ..Default::default() })
            .map_err(|e| e.to_string())?;
        for r in &records {
            classes += 1;
            let ok = if n <= k + 1 {
                r.gamma == 2
            } else {
                (r.gamma == 3 || r.gamma == 4) && ((r.gamma == 4) == r.unique_form)
            };
            if !ok {
                mismatches.push(format!("(k={k},n={n}) {} gamma={} unique_form={}", r.key, r.gamma, r.unique_form));
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("{} mismatches: {}", mismatches.len(), mismatches.join("; ")))?;
    Ok(format!("{classes} classes over 10 (k,n) pairs, 0 mismatches"))
}

fn conjecture_scan() -> Outcome {
    let mut classes = 0;
    let mut findings = Vec::new();
    let mut confirmed = Vec::new();
    let mut max_ratio = (0, 1, 1);
    for n in 1..=7 {
        for k in 1..=n {
            let (records, summary) = scan_conjecture(n, k, ScanOptions::default()).map_err(|e| e.to_string())?;
            classes += summary.classes;
            for r in records.iter().filter(|r| r.conj_violation) {
                findings.push(format!("(n={n},k={k}) {}", r.key));
                let oracle = oracle_gamma(r).map_err(|e| e.to_string())?;
                if oracle > r.conj_bound {
                    confirmed.push(format!("(n={n},k={k}) {} gamma={oracle}", r.key));
                }
            }
            if summary.max_gamma * max_ratio.2 > max_ratio.0 * 2 * n.div_ceil(k) {
                max_ratio = (summary.max_gamma, n, 2 * n.div_ceil(k));
            }
        }
    }
    ensure(confirmed.is_empty(), || format!("confirmed violations: {}", confirmed.join("; ")))?;
    Ok(format!(
        "{classes} classes with n <= 7, {} solver findings, 0 confirmed violations",
        findings.len()
    ))
}

fn random_connected_bipartite(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.gen_range(2..=12);
        let a = rng.gen_range(1..n);
        let p = rng.gen_range(0.15..0.8);
        let edges: Vec<_> = (0..a)
            .flat_map(|u| (a..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    for _ in 0..1000 {
        let g = random_connected_bipartite(&mut rng);
        let bg = bipartition(&g).ok_or("generated graph is not bipartite")?;
        let gamma = gamma_exact(&g).0;
        let oracle = gamma_brute(&g).map_err(|e| e.to_string())?;
        ensure(gamma == oracle, || format!("solver {gamma} vs oracle {oracle}"))?;
        if !(degree_lower_bound(&g) <= gamma && gamma <= bipartition_upper_bound(&bg).value) {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("1000 random connected bipartite graphs (n <= 12), 0 violations".into())
}

fn imbalance_soundness() -> Outcome {
    let factors: Vec<BipartiteGraph> = (1..=6)
        .flat_map(connected_bipartite_graphs)
        .map(|g| bipartition(&g).expect("bipartite catalogue"))
        .collect();
    let cache = GammaCache::in_memory();
    let (mut fired, mut degenerate, mut pairs) = (0, 0, 0);
    let mut violations = Vec::new();
    for (i, g) in factors.iter().enumerate() {
        for h in &factors[i..] {
            pairs += 1;
            let verdict = match imbalance_criterion(g, h) {
                Ok(v) => v,
                Err(Error::Degenerate(_)) => {
                    degenerate += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            if !verdict.satisfied {
                continue;
            }
            fired += 1;
            let product = cartesian_product(g.graph(), h.graph()).map_err(|e| e.to_string())?;
            let gp = cache.gamma(&product.graph);
            let (gg, gh) = (cache.gamma(g.graph()), cache.gamma(h.graph()));
            if gp < gg * gh {
                violations.push(format!("{gp} < {gg}*{gh}"));
            }
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!(
        "{pairs} factor pairs, criterion fired on {fired}, Vizing held on all; {degenerate} pairs with K1 skipped (empty side)"
    ))
}

fn vizing_suite() -> Outcome {
    let graphs: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    let mut pairs = 0;
    for (i, g) in graphs.iter().enumerate() {
        for h in &graphs[i..] {
            pairs += 1;
            let (integer, density) = both_forms(g, h, 64).map_err(|e| e.to_string())?;
            ensure(integer && density, || format!("violation on a pair of orders {} and {}", g.order(), h.order()))?;
        }
    }
    Ok(format!("{pairs} pairs of connected graphs (<= 5 vertices), 0 violations, density form agrees"))
}

fn auto_regime() -> Outcome {
    for k in 9..=50 {
        let v = threshold_condition(k, k, k).map_err(|e| e.to_string())?;
        ensure(v.satisfied, || format!("k={k} not satisfied at n=k"))?;
    }
    let eight = threshold_condition(8, 8, 8).map_err(|e| e.to_string())?;
    ensure(!eight.satisfied, || "k=8 satisfied at n=8".into())?;
    Ok("satisfied at n=k for 9 <= k <= 50, not at k=n=8".into())
}

fn naive_rank(rows: &[Vec<bool>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&b| int(b as usize)).collect()).collect();
    let (nr, nc) = (a.len(), a[0].len());
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..nr {
            let f = &a[r][c] / &a[rank][c];
            for cc in c..nc {
                let v = &a[rank][cc] * &f;
                a[r][cc] -= v;
            }
        }
        rank += 1;
    }
    rank
}

fn obstruction() -> Outcome {
    let mut classes = 0;
    let mut broken = Vec::new();
    let mut broken_k2 = 0;
    for n in 1..=6 {
        for k in 1..=n {
            for m in enumerate_kreg(n, k, false).map_err(|e| e.to_string())? {
                classes += 1;
                let r = obstruction_report(&m);
                if !r.implication_holds {
                    broken.push(format!("(n={n},k={k})"));
                    if k >= 2 {
                        broken_k2 += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let rows: Vec<Vec<bool>> = (0..r).map(|_| (0..c).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let exact = rank_exact(&RationalMatrix::from_bools(&rows).map_err(|e| e.to_string())?);
        ensure(exact == naive_rank(&rows), || "rank disagrees with naive elimination".into())?;
    }
    let detail = format!(
        "{classes} classes with n <= 6; rank agrees with naive elimination on 500 random matrices; \
         {} full-rank classes with a ceil(n/k)-row cover, {broken_k2} of them with k >= 2",
        broken.len()
    );
    ensure(broken.is_empty(), || {
        format!(
            "{detail}. Counterexamples: {} (permutation matrices: full rank, and all n rows form a cover)",
            broken.join(", ")
        )
    })?;
    Ok(detail)
}

fn transform() -> Outcome {
    let gs: Vec<BipartiteGraph> = (2..=7)
        .flat_map(connected_bipartite_graphs)
        .map(|g| bipartition(&g).unwrap())
        .collect();
    let hs: Vec<Graph> = (1..=4).flat_map(connected_graphs).collect();
    let mut pairs: Vec<(usize, usize)> = (0..gs.len()).flat_map(|i| (0..hs.len()).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(11));
    let mut checked = 0;
    let mut max_rounds = 0;
    for (i, j) in pairs {
        if checked == 30 {
            break;
        }
        let (g, h) = (&gs[i], &hs[j]);
        let rho_h = rho(h).value;
        if choose_side(g, &rho_h).chosen.is_none() {
            continue;
        }
        checked += 1;
        let report = constructive_inequality_check(g, h, 512).map_err(|e| e.to_string())?;
        ensure(report.holds == Some(true), || format!("constructive inequality failed: {report:?}"))?;
        let trace = iterate_leaves(g, h.max_degree(), &rho_h, 64).map_err(|e| e.to_string())?;
        let bound = trace.round_bound.ok_or("no round bound")?;
        let last = trace.final_round.ok_or("trace did not terminate")?;
        ensure(last <= bound, || format!("terminated at round {last}, bound {bound}"))?;
        ensure(trace.gamma_invariant, || "gamma changed along the trace".into())?;
        let audit = audit_products(&trace, h, 512).map_err(|e| e.to_string())?;
        ensure(audit.iter().all(|r| r.within_bound), || "product grew beyond gamma(GxH) + m*|V(H)|".into())?;
        ensure(audit.last().is_none_or(|r| r.vizing_holds), || "Vizing failed on the final round".into())?;
        max_rounds = max_rounds.max(last);
    }
    ensure(checked >= 20, || format!("only {checked} pairs met the hypothesis"))?;
    Ok(format!("{checked} pairs in hypothesis, all inequalities hold, longest trace {max_rounds} rounds"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("N(k) table", Duration::from_secs(1), thresholds),
        ("6x6 3-regular example", Duration::from_secs(1), cubic_six),
        ("(6,4) block form", Duration::from_secs(30), block_six),
        ("n = k, k+1, k+2 classification", Duration::from_secs(300), n_equals_k),
        ("conjectured bound scan", Duration::from_secs(600), conjecture_scan),
        ("bound sandwich", Duration::from_secs(60), sandwich),
        ("imbalance criterion soundness", Duration::from_secs(600), imbalance_soundness),
        ("Vizing desk-scale suite", Duration::from_secs(300), vizing_suite),
        ("auto regime k >= 9", Duration::from_secs(1), auto_regime),
        ("rank obstruction", Duration::from_secs(120), obstruction),
        ("transform engine", Duration::from_secs(300), transform),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed.insert(i + 1);
        }
        println!(
            "{} {:>2} {name} [{:.2}s / {}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria passed");
    } else {
        println!("acceptance: {} of 11 failed: {failed:?}", failed.len());
        std::process::exit(1);
    }
}
