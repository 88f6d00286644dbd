//! Exact domination numbers.
//!
//! [`gamma_exact`] is a branch-and-bound over "which vertex dominates the
//! most constrained undominated vertex". Lower bounds at each node:
//!
//! * `⌈uncovered / best possible gain⌉`, never weaker than the
//!   `⌈uncovered / (Δ+1)⌉` degree bound;
//! * a greedy 2-packing of the undominated region: undominated vertices
//!   whose remaining candidate dominators are pairwise disjoint each need
//!   their own dominator.
//!
//! [`gamma_brute`] is the independent oracle: subsets in increasing size.

use serde::Serialize;

use crate::bitset::{words_for, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product_capped, Graph, DEFAULT_MAX_VERTICES};

/// Largest graph the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominatingSet {
    pub vertices: VertexSet,
    pub size: usize,
}

impl DominatingSet {
    pub fn new(vertices: VertexSet) -> Self {
        let size = vertices.len();
        DominatingSet { vertices, size }
    }
}

/// True iff the closed neighbourhoods of `s` cover every vertex.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    let mut covered = s.clone();
    for v in s {
        covered.union_with(g.neighbors(v));
    }
    covered.is_full()
}

struct Search<'a> {
    nw: usize,
    /// closed[v*nw..(v+1)*nw] is N[v]
    closed: &'a [u64],
    /// vertices by descending degree, then index
    rank: &'a [usize],
    full: Vec<u64>,
    /// largest size still worth finding
    budget: usize,
    stop_on_find: bool,
    found: Option<Vec<u64>>,
}

impl<'a> Search<'a> {
    fn closed(&self, v: usize) -> &[u64] {
        &self.closed[v * self.nw..(v + 1) * self.nw]
    }

    fn run(&mut self, covered: &[u64], chosen: &mut Vec<u64>, excluded: &[u64], count: usize) {
        let nw = self.nw;
        let uncovered: Vec<u64> = (0..nw).map(|i| self.full[i] & !covered[i]).collect();
        let remaining: usize = uncovered.iter().map(|w| w.count_ones() as usize).sum();
        if remaining == 0 {
            if count <= self.budget {
                self.found = Some(chosen.clone());
                if !self.stop_on_find {
                    self.budget = count.saturating_sub(1);
                }
            }
            return;
        }
        if count >= self.budget {
            return;
        }

        // Most constrained undominated vertex and per-vertex candidate counts.
        let mut pick = usize::MAX;
        let mut pick_opts = usize::MAX;
        let mut uncovered_opts: Vec<(usize, usize)> = Vec::with_capacity(remaining);
        for_each_bit(&uncovered, |u| {
            let c = self.closed(u);
            let opts: usize = (0..nw).map(|i| (c[i] & !excluded[i]).count_ones() as usize).sum();
            uncovered_opts.push((opts, u));
            if opts < pick_opts {
                pick_opts = opts;
                pick = u;
            }
        });
        if pick_opts == 0 {
            return;
        }

        let mut max_gain = 0;
        for &v in self.rank {
            if excluded[v / 64] >> (v % 64) & 1 == 1 {
                continue;
            }
            let c = self.closed(v);
            let gain: usize = (0..nw).map(|i| (c[i] & uncovered[i]).count_ones() as usize).sum();
            max_gain = max_gain.max(gain);
        }
        let slack = self.budget - count;
        if remaining.div_ceil(max_gain) > slack {
            return;
        }

        uncovered_opts.sort_unstable();
        let mut packed = 0usize;
        let mut blocked = vec![0u64; nw];
        for &(_, u) in &uncovered_opts {
            let c = self.closed(u);
            if (0..nw).all(|i| c[i] & !excluded[i] & blocked[i] == 0) {
                for i in 0..nw {
                    blocked[i] |= c[i] & !excluded[i];
                }
                packed += 1;
                if packed > slack {
                    return;
                }
            }
        }

        let pick_closed = self.closed(pick).to_vec();
        let mut local_excluded = excluded.to_vec();
        for &v in self.rank {
            if pick_closed[v / 64] >> (v % 64) & 1 == 0 || local_excluded[v / 64] >> (v % 64) & 1 == 1 {
                continue;
            }
            let c = self.closed(v);
            let next: Vec<u64> = (0..nw).map(|i| covered[i] | c[i]).collect();
            chosen[v / 64] |= 1 << (v % 64);
            self.run(&next, chosen, &local_excluded, count + 1);
            chosen[v / 64] &= !(1 << (v % 64));
            if self.stop_on_find && self.found.is_some() {
                return;
            }
            if count + 1 > self.budget {
                return;
            }
            local_excluded[v / 64] |= 1 << (v % 64);
        }
    }
}

fn for_each_bit(words: &[u64], mut f: impl FnMut(usize)) {
    for (i, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            f(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

/// Reusable per-graph tables for the search.
struct Tables {
    n: usize,
    nw: usize,
    closed: Vec<u64>,
    rank: Vec<usize>,
}

impl Tables {
    fn new(g: &Graph) -> Tables {
        let n = g.order();
        let nw = words_for(n).max(1);
        let mut closed = vec![0u64; n * nw];
        for v in 0..n {
            let c = g.closed_neighborhood(v);
            closed[v * nw..v * nw + c.words().len()].copy_from_slice(c.words());
        }
        let mut rank: Vec<usize> = (0..n).collect();
        rank.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Tables { n, nw, closed, rank }
    }

    fn search(&self, budget: usize, stop_on_find: bool) -> Search<'_> {
        Search {
            nw: self.nw,
            closed: &self.closed,
            rank: &self.rank,
            full: VertexSet::full(self.n).words().to_vec(),
            budget,
            stop_on_find,
            found: None,
        }
    }

    /// Greedy max-coverage: repeatedly take the vertex (in rank order)
    /// dominating the most undominated vertices.
    fn greedy(&self) -> Vec<u64> {
        let nw = self.nw;
        let full = VertexSet::full(self.n);
        let mut covered = vec![0u64; nw];
        let mut chosen = vec![0u64; nw];
        loop {
            let uncovered: Vec<u64> = (0..nw).map(|i| full.words()[i] & !covered[i]).collect();
            if uncovered.iter().all(|&w| w == 0) {
                return chosen;
            }
            let (best, _) = self
                .rank
                .iter()
                .map(|&v| {
                    let c = &self.closed[v * nw..(v + 1) * nw];
                    (v, (0..nw).map(|i| (c[i] & uncovered[i]).count_ones()).sum::<u32>())
                })
                .fold((usize::MAX, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
            chosen[best / 64] |= 1 << (best % 64);
            for i in 0..nw {
                covered[i] |= self.closed[best * nw + i];
            }
        }
    }

    /// Some dominating set of size ≤ `budget` containing `include` and
    /// avoiding `exclude`, if one exists.
    fn feasible(&self, budget: usize, include: &[u64], exclude: &[u64]) -> Option<Vec<u64>> {
        let nw = self.nw;
        let mut covered = vec![0u64; nw];
        let mut count = 0;
        for_each_bit(include, |v| {
            count += 1;
            for i in 0..nw {
                covered[i] |= self.closed[v * nw + i];
            }
        });
        if count > budget {
            return None;
        }
        let mut s = self.search(budget, true);
        let mut chosen = include.to_vec();
        s.run(&covered, &mut chosen, exclude, count);
        s.found
    }

    fn optimum(&self) -> (usize, Vec<u64>) {
        let greedy = self.greedy();
        let ub: usize = greedy.iter().map(|w| w.count_ones() as usize).sum();
        let mut s = self.search(ub.saturating_sub(1), false);
        let mut chosen = vec![0u64; self.nw];
        s.run(&vec![0u64; self.nw], &mut chosen, &vec![0u64; self.nw], 0);
        match s.found {
            Some(best) => (best.iter().map(|w| w.count_ones() as usize).sum(), best),
            None => (ub, greedy),
        }
    }

    /// Lexicographically smallest (as a sorted vertex list) dominating set
    /// of size `gamma`, starting from any known one.
    fn lex_min(&self, gamma: usize, known: Vec<u64>) -> Vec<u64> {
        let nw = self.nw;
        let mut include = vec![0u64; nw];
        let mut exclude = vec![0u64; nw];
        let mut current = known;
        let mut taken = 0;
        for v in 0..self.n {
            if taken == gamma {
                break;
            }
            let (w, b) = (v / 64, 1u64 << (v % 64));
            if current[w] & b != 0 {
                include[w] |= b;
                taken += 1;
                continue;
            }
            include[w] |= b;
            match self.feasible(gamma, &include, &exclude) {
                Some(sol) => {
                    current = sol;
                    taken += 1;
                }
                None => {
                    include[w] &= !b;
                    exclude[w] |= b;
                }
            }
        }
        debug_assert_eq!(include, current);
        current
    }
}

/// γ(G) with a minimum dominating set. Among minimum sets the one with the
/// lexicographically smallest sorted vertex list is returned.
pub fn gamma_exact(g: &Graph) -> (usize, DominatingSet) {
    let n = g.order();
    if n == 0 {
        return (0, DominatingSet::new(VertexSet::new(0)));
    }
    let t = Tables::new(g);
    let (gamma, witness) = t.optimum();
    let canonical = t.lex_min(gamma, witness);
    let set = VertexSet::from_words(n, canonical[..words_for(n)].to_vec());
    (gamma, DominatingSet::new(set))
}

/// γ(G) only; skips the witness canonicalisation pass.
pub fn gamma_number(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    Tables::new(g).optimum().0
}

/// Whether `g` has a dominating set of size ≤ `budget` that contains
/// `include` and avoids `exclude`.
pub fn dominating_set_within(
    g: &Graph,
    budget: usize,
    include: &VertexSet,
    exclude: &VertexSet,
) -> Option<DominatingSet> {
    let n = g.order();
    let t = Tables::new(g);
    let pad = |s: &VertexSet| {
        let mut w = s.words().to_vec();
        w.resize(t.nw, 0);
        w
    };
    t.feasible(budget, &pad(include), &pad(exclude))
        .map(|w| DominatingSet::new(VertexSet::from_words(n, w[..words_for(n)].to_vec())))
}

/// Brute-force γ: tries every subset in order of increasing size.
pub fn gamma_brute(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::Capacity {
            what: "brute-force domination",
            requested: n,
            limit: BRUTE_FORCE_MAX,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| u == v || g.has_edge(u, v)).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for size in 1..=n {
        let mut subset: u32 = (1u32 << size) - 1;
        loop {
            let mut cov = 0u32;
            let mut rest = subset;
            while rest != 0 {
                cov |= closed[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            if cov == all {
                return Ok(size);
            }
            // Gosper's hack: next subset with the same popcount
            let c = subset & subset.wrapping_neg();
            let r = subset + c;
            let next = (((r ^ subset) >> 2) / c) | r;
            if r > all || next > all || r == 0 {
                break;
            }
            subset = next;
        }
    }
    Ok(n)
}

/// Every dominating set of `g` of exactly `size` vertices, in
/// lexicographic order. Intended for small graphs.
pub fn dominating_sets_of_size(g: &Graph, size: usize) -> Vec<VertexSet> {
    let n = g.order();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(g: &Graph, start: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if current.len() == size {
            let s = VertexSet::from_indices(g.order(), current.iter().copied());
            if is_dominating(g, &s) {
                out.push(s);
            }
            return;
        }
        let needed = size - current.len();
        for v in start..=g.order().saturating_sub(needed) {
            current.push(v);
            rec(g, v + 1, size, current, out);
            current.pop();
        }
    }
    if size <= n {
        rec(g, 0, size, &mut current, &mut out);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct VizingReport {
    pub gamma_g: usize,
    pub gamma_h: usize,
    pub gamma_product: usize,
    pub holds: bool,
    pub witness_g: DominatingSet,
    pub witness_h: DominatingSet,
    pub witness_product: DominatingSet,
}

pub fn check_vizing(g: &Graph, h: &Graph) -> Result<VizingReport> {
    check_vizing_capped(g, h, DEFAULT_MAX_VERTICES)
}

pub fn check_vizing_capped(g: &Graph, h: &Graph, max_vertices: usize) -> Result<VizingReport> {
    let product = cartesian_product_capped(g, h, max_vertices)?;
    let (gamma_g, witness_g) = gamma_exact(g);
    let (gamma_h, witness_h) = gamma_exact(h);
    let (gamma_product, witness_product) = gamma_exact(&product.graph);
    Ok(VizingReport {
        gamma_g,
        gamma_h,
        gamma_product,
        holds: gamma_product >= gamma_g * gamma_h,
        witness_g,
        witness_h,
        witness_product,
    })
}
