//! Closed-form bounds and sufficient conditions for Vizing's inequality.
//!
//! Every criterion returns a [`CriterionVerdict`] carrying both sides as
//! exact rationals, so a report can be audited without recomputation.
//! The orientation is always `satisfied ⟺ lhs ≥ rhs`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::rational::{int, ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub name: &'static str,
    pub satisfied: bool,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub rhs: Rational,
    /// lhs = rhs exactly
    pub boundary: bool,
    /// false when the inputs fall outside the statement's assumptions
    /// (e.g. a disconnected graph); the verdict is then informational
    pub in_hypothesis: bool,
}

impl CriterionVerdict {
    fn new(name: &'static str, lhs: Rational, rhs: Rational, in_hypothesis: bool) -> Self {
        CriterionVerdict {
            name,
            satisfied: lhs >= rhs,
            boundary: lhs == rhs,
            lhs,
            rhs,
            in_hypothesis,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub in_hypothesis: bool,
}

/// γ(G) ≤ |A|: the smaller side dominates a connected bipartite graph.
pub fn bipartition_upper_bound(bg: &BipartiteGraph) -> Bound {
    Bound {
        value: bg.side_a().len(),
        in_hypothesis: bg.graph().is_connected(),
    }
}

/// ⌈n / (Δ+1)⌉ ≤ γ(G).
pub fn degree_lower_bound(g: &Graph) -> usize {
    g.order().div_ceil(g.max_degree() + 1)
}

fn nonempty_small_side(bg: &BipartiteGraph, which: &str) -> Result<usize> {
    match bg.side_a().len() {
        0 => Err(Error::Degenerate(format!("{which} has an empty side A"))),
        a => Ok(a),
    }
}

/// (1 + |B_G|/|A_G|)(1 + |B_H|/|A_H|) ≥ Δ(G) + Δ(H) + 1.
pub fn imbalance_criterion(bg_g: &BipartiteGraph, bg_h: &BipartiteGraph) -> Result<CriterionVerdict> {
    let ag = nonempty_small_side(bg_g, "G")?;
    let ah = nonempty_small_side(bg_h, "H")?;
    let lhs = (int(1) + ratio(bg_g.side_b().len(), ag)) * (int(1) + ratio(bg_h.side_b().len(), ah));
    let rhs = int(bg_g.graph().max_degree() + bg_h.graph().max_degree() + 1);
    let connected = bg_g.graph().is_connected() && bg_h.graph().is_connected();
    Ok(CriterionVerdict::new("imbalance", lhs, rhs, connected))
}

/// (|A_G| + |B_G|)/|A_G| ≥ (Δ(G) + Δ(H) + 1)·ρ_H, for an arbitrary H given
/// by its maximum degree and domination density.
pub fn imbalance_vs_arbitrary(bg_g: &BipartiteGraph, delta_h: usize, rho_h: &Rational) -> Result<CriterionVerdict> {
    let ag = nonempty_small_side(bg_g, "G")?;
    Ok(imbalance_with_denominator(
        bg_g.graph().order(),
        ag,
        bg_g.graph().max_degree(),
        delta_h,
        rho_h,
        bg_g.graph().is_connected(),
    ))
}

/// The same inequality with an explicit denominator side size. Used when
/// a fixed side X is tracked through leaf attachment even after it stops
/// being the smaller side.
pub fn imbalance_with_denominator(
    order: usize,
    denominator: usize,
    delta_g: usize,
    delta_h: usize,
    rho_h: &Rational,
    in_hypothesis: bool,
) -> CriterionVerdict {
    let lhs = ratio(order, denominator);
    let rhs = int(delta_g + delta_h + 1) * rho_h;
    CriterionVerdict::new("imbalance-arbitrary", lhs, rhs, in_hypothesis)
}

/// 2⌈n/k⌉, the conjectured upper bound on γ for balanced k-regular
/// bipartite graphs with sides of size n.
pub fn conjectured_kreg_bound(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k > n {
        return Err(Error::precondition(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(2 * n.div_ceil(k))
}

/// 1/(2k+1) ≥ (1/k + 1/n_G)(1/k + 1/n_H).
pub fn threshold_condition(k: usize, n_g: usize, n_h: usize) -> Result<CriterionVerdict> {
    if k == 0 || n_g < k || n_h < k {
        return Err(Error::precondition(format!(
            "need k >= 1 and n_G, n_H >= k, got k={k}, n_G={n_g}, n_H={n_h}"
        )));
    }
    let lhs = ratio(1, 2 * k + 1);
    let rhs = (ratio(1, k) + ratio(1, n_g)) * (ratio(1, k) + ratio(1, n_h));
    Ok(CriterionVerdict::new("threshold", lhs, rhs, true))
}

/// Reference values of N(k) as published alongside the threshold formula.
pub const PUBLISHED_THRESHOLDS: [(usize, usize); 6] = [(3, 23), (4, 13), (5, 10), (6, 10), (7, 9), (8, 9)];

pub fn published_threshold(k: usize) -> Option<usize> {
    PUBLISHED_THRESHOLDS.iter().find(|(kk, _)| *kk == k).map(|&(_, n)| n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub k: usize,
    /// smallest n ≥ k with the balanced threshold condition satisfied (≥)
    pub n: usize,
    /// the condition holds with equality at `n`
    pub boundary: bool,
    /// `n == k`: the condition holds as soon as n ≥ k
    pub automatic: bool,
    pub published: Option<usize>,
}

impl Threshold {
    pub fn matches_published(&self) -> Option<bool> {
        self.published.map(|p| p == self.n)
    }
}

/// N(k) by exact scan upward from n = k.
pub fn n_of_k(k: usize) -> Result<Threshold> {
    if k < 3 {
        return Err(Error::precondition(format!("N(k) needs k >= 3, got {k}")));
    }
    // 1/k + 1/n is decreasing in n and the condition holds once
    // 1/n ≤ 1/sqrt(2k+1) - 1/k, which is positive for k ≥ 3
    let mut n = k;
    loop {
        let v = threshold_condition(k, n, n)?;
        if v.satisfied {
            return Ok(Threshold {
                k,
                n,
                boundary: v.boundary,
                automatic: n == k,
                published: published_threshold(k),
            });
        }
        n += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdTable {
    pub entries: BTreeMap<usize, Threshold>,
    /// smallest k from which every tabulated N(k) equals k
    pub auto_regime: Option<usize>,
}

pub fn threshold_table(kmax: usize) -> Result<ThresholdTable> {
    if kmax < 3 {
        return Err(Error::precondition(format!("kmax must be >= 3, got {kmax}")));
    }
    let entries: BTreeMap<usize, Threshold> = (3..=kmax).map(|k| n_of_k(k).map(|t| (k, t))).collect::<Result<_>>()?;
    let mut auto_regime = None;
    for k in (3..=kmax).rev() {
        if entries[&k].automatic {
            auto_regime = Some(k);
        } else {
            break;
        }
    }
    Ok(ThresholdTable { entries, auto_regime })
}

/// 2r with r = n − k > 0.
pub fn kreg_order_bound(n: usize, k: usize) -> Result<usize> {
    if n <= k || n <= 1 {
        return Err(Error::precondition(format!("need n = k + r with r > 0 and n > 1, got n={n}, k={k}")));
    }
    Ok(2 * (n - k))
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuralCase {
    pub description: &'static str,
    pub n_minus_k: usize,
    pub gamma: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteRemainder {
    pub pairs: BTreeSet<(usize, usize)>,
    pub structural: StructuralCase,
}

/// The (k, n) pairs left open by the threshold argument, plus the
/// structural n = k+2, γ = 4 case.
pub fn finite_remainder() -> FiniteRemainder {
    let pairs = (6..=12)
        .map(|n| (4, n))
        .chain((7..=9).map(|n| (5, n)))
        .chain((8..=9).map(|n| (6, n)))
        .collect();
    FiniteRemainder {
        pairs,
        structural: StructuralCase {
            description: "balanced k-regular bipartite with n = k + 2 and gamma = 4 (all-ones minus n/2 disjoint 2x2 zero blocks)",
            n_minus_k: 2,
            gamma: 4,
        },
    }
}

/// Regimes where the inequality is already established in the literature.
/// Recorded as metadata only, never used to skip a computation.
#[derive(Clone, Debug, Serialize)]
pub struct LiteratureFlags {
    /// some factor has γ ≤ 3
    pub low_domination: bool,
    /// both factors are k-regular with k ≤ 3 or k ≥ 27
    pub extreme_regular_degree: bool,
}

pub fn literature_flags(g: &Graph, h: &Graph, gamma_g: usize, gamma_h: usize) -> LiteratureFlags {
    let regular_degree = |x: &Graph| {
        let d = x.degree(0);
        (0..x.order()).all(|v| x.degree(v) == d).then_some(d)
    };
    let extreme = |d: Option<usize>| d.is_some_and(|d| d <= 3 || d >= 27);
    LiteratureFlags {
        low_domination: gamma_g.min(gamma_h) <= 3,
        extreme_regular_degree: g.order() > 0
            && h.order() > 0
            && extreme(regular_degree(g))
            && extreme(regular_degree(h)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bipartition;

    fn bip(g: Graph) -> BipartiteGraph {
        bipartition(&g).unwrap()
    }

    #[test]
    fn domination_bounds() {
        assert_eq!(bipartition_upper_bound(&bip(Graph::star(9))).value, 1);
        assert_eq!(bipartition_upper_bound(&bip(Graph::complete_bipartite(3, 3))).value, 3);
        assert_eq!(bipartition_upper_bound(&bip(Graph::cycle(6))).value, 3);
        assert_eq!(degree_lower_bound(&Graph::complete_bipartite(3, 3)), 2);
        assert_eq!(degree_lower_bound(&Graph::cycle(6)), 2);
        let two_paths = Graph::path(2).disjoint_union(&Graph::path(2));
        assert!(!bipartition_upper_bound(&bip(two_paths)).in_hypothesis);
    }

    #[test]
    fn imbalance_examples() {
        let star = bip(Graph::star(9));
        let v = imbalance_criterion(&star, &star).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (int(100), int(19)));
        assert!(v.satisfied && v.in_hypothesis);

        let c4 = bip(Graph::cycle(4));
        let v = imbalance_criterion(&c4, &c4).unwrap();
        assert_eq!((v.lhs, v.rhs, v.satisfied), (int(4), int(5), false));

        let k33 = bip(Graph::complete_bipartite(3, 3));
        let v = imbalance_criterion(&k33, &k33).unwrap();
        assert_eq!((v.lhs, v.rhs, v.satisfied), (int(4), int(7), false));

        let k1 = bip(Graph::empty(1));
        assert!(matches!(imbalance_criterion(&k1, &star), Err(Error::Degenerate(_))));
    }

    #[test]
    fn arbitrary_h_examples() {
        let v = imbalance_vs_arbitrary(&bip(Graph::star(9)), 2, &ratio(1, 3)).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (int(10), int(4)));
        assert!(v.satisfied);
        let v = imbalance_vs_arbitrary(&bip(Graph::cycle(6)), 2, &int(1)).unwrap();
        assert_eq!(v.lhs, int(2));
        assert!(!v.satisfied);
    }

    #[test]
    fn kreg_bounds() {
        assert_eq!(conjectured_kreg_bound(6, 3).unwrap(), 4);
        assert_eq!(conjectured_kreg_bound(6, 4).unwrap(), 4);
        assert_eq!(conjectured_kreg_bound(5, 5).unwrap(), 2);
        assert!(conjectured_kreg_bound(3, 4).is_err());
        assert_eq!(kreg_order_bound(5, 4).unwrap(), 2);
        assert_eq!(kreg_order_bound(6, 4).unwrap(), 4);
        assert_eq!(kreg_order_bound(6, 3).unwrap(), 6);
        assert!(kreg_order_bound(4, 4).is_err());
    }

    #[test]
    fn threshold_examples() {
        let v = threshold_condition(4, 12, 12).unwrap();
        assert!(v.satisfied && v.boundary);
        assert_eq!(v.lhs, ratio(1, 9));
        assert!(threshold_condition(9, 9, 9).unwrap().satisfied);
        assert!(!threshold_condition(3, 22, 22).unwrap().satisfied);
        assert!(threshold_condition(3, 2, 5).is_err());
    }

    #[test]
    fn n_of_k_values() {
        let got: Vec<usize> = (3..=8).map(|k| n_of_k(k).unwrap().n).collect();
        assert_eq!(got, vec![23, 12, 10, 10, 9, 9]);
        let four = n_of_k(4).unwrap();
        assert!(four.boundary);
        assert_eq!(four.published, Some(13));
        assert_eq!(four.matches_published(), Some(false));
        assert_eq!(n_of_k(3).unwrap().matches_published(), Some(true));
        let table = threshold_table(12).unwrap();
        assert_eq!(table.auto_regime, Some(9));
        assert!(table.entries.values().all(|t| t.n >= t.k));
    }

    #[test]
    fn remainder() {
        let r = finite_remainder();
        assert_eq!(r.pairs.len(), 12);
        assert!(r.pairs.contains(&(4, 6)) && r.pairs.contains(&(4, 12)) && !r.pairs.contains(&(4, 13)));
        assert!(r.pairs.contains(&(6, 9)) && !r.pairs.contains(&(6, 10)));
        assert_eq!(r.structural.gamma, 4);
    }

    #[test]
    fn flags() {
        let f = literature_flags(&Graph::cycle(4), &Graph::cycle(4), 2, 2);
        assert!(f.low_domination && f.extreme_regular_degree);
        let f = literature_flags(&Graph::complete_bipartite(4, 4), &Graph::path(3), 4, 4);
        assert!(!f.low_domination && !f.extreme_regular_degree);
    }
}
