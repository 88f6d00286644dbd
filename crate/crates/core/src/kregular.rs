//! Balanced k-regular bipartite graphs as n×n 0/1 matrices, enumerated up
//! to independent row and column permutations.
//!
//! Rows are stored as n-bit masks with column 0 in the most significant
//! position, so comparing masks numerically compares rows
//! lexicographically. The class representative is the lexicographically
//! smallest row-sorted matrix over all column orders; it has both its rows
//! and its columns in nondecreasing order, which is what the generator
//! exploits.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::criteria::{conjectured_kreg_bound, kreg_order_bound};
use crate::domination::{gamma_brute, gamma_exact, DominatingSet, BRUTE_FORCE_MAX};
use crate::error::{Error, Result};
use crate::format::parse_binary_matrix;
use crate::graph::Graph;
use crate::rank::{obstruction_report, ObstructionReport};

/// Largest side size enumerated by default.
pub const SCAN_CAP: usize = 7;
/// Largest side size enumerated with the large-scan override.
pub const SCAN_CAP_LARGE: usize = 8;

/// A square 0/1 matrix, at most 64 columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 64 {
            return Err(Error::precondition(format!("matrix side {n} outside 1..=64")));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::precondition(format!("row {bad} has {} entries, expected {n}", rows[bad].len())));
        }
        let masks = rows
            .iter()
            .map(|r| r.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
            .collect();
        Ok(BinaryMatrix { n, rows: masks })
    }

    pub(crate) fn from_masks(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        BinaryMatrix { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> (self.n - 1 - j) & 1 == 1
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn support(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(i, j)).collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.n).map(|j| (0..self.n).filter(|&i| self.get(i, j)).count()).collect()
    }

    /// Common row and column sum, if there is one.
    pub fn regularity(&self) -> Option<usize> {
        let k = self.rows[0].count_ones() as usize;
        let rows = self.row_sums().into_iter().all(|s| s == k);
        let cols = self.col_sums().into_iter().all(|s| s == k);
        (rows && cols).then_some(k)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let rows = (0..self.n)
            .map(|j| (0..self.n).fold(0u64, |acc, i| (acc << 1) | self.get(i, j) as u64))
            .collect();
        BinaryMatrix { n: self.n, rows }
    }

    /// Row `i` moves to `row_perm[i]`, column `j` to `col_perm[j]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BinaryMatrix {
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    rows[row_perm[i]] |= 1 << (self.n - 1 - col_perm[j]);
                }
            }
        }
        BinaryMatrix { n: self.n, rows }
    }

    /// The bipartite graph with a_i = i and b_j = n + j.
    pub fn to_graph(&self) -> Graph {
        let n = self.n;
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| self.get(i, j)).map(move |j| (i, n + j)))
            .collect();
        Graph::from_edges(2 * n, &edges).expect("biadjacency edges are valid")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let line: String = self.row(i).into_iter().map(|b| if b { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// A k-regular n×n biadjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiadjacencyMatrix {
    k: usize,
    matrix: BinaryMatrix,
}

impl Deref for BiadjacencyMatrix {
    type Target = BinaryMatrix;

    fn deref(&self) -> &BinaryMatrix {
        &self.matrix
    }
}

impl BiadjacencyMatrix {
    pub fn new(matrix: BinaryMatrix) -> Result<Self> {
        match matrix.regularity() {
            Some(k) if k >= 1 => Ok(BiadjacencyMatrix { k, matrix }),
            _ => Err(Error::precondition("matrix is not k-regular with k >= 1")),
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        Self::new(BinaryMatrix::from_rows(rows)?)
    }

    /// Parses n lines of n characters from {0,1}; blank lines and `#`
    /// comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_rows(&parse_binary_matrix(text)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn transpose(&self) -> BiadjacencyMatrix {
        BiadjacencyMatrix {
            k: self.k,
            matrix: self.matrix.transpose(),
        }
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BiadjacencyMatrix {
        BiadjacencyMatrix {
            k: self.k,
            matrix: self.matrix.permuted(row_perm, col_perm),
        }
    }
}

impl fmt::Display for BiadjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// Search for the smallest row-sorted matrix over column orders.
///
/// Columns sit in an ordered partition; a cell occupies a contiguous run
/// of positions whose internal order is still free. A row placed next is
/// best served by putting its zeros first inside every cell, so its value
/// depends only on how many ones it has per cell. Rows are chosen
/// smallest-value first; ties branch.
struct CanonSearch<'a> {
    n: usize,
    rows: &'a [u64],
    best: Vec<u64>,
    have_best: bool,
    /// stop as soon as anything beats `best`
    early_exit: bool,
    beaten: bool,
}

impl CanonSearch<'_> {
    fn value(&self, row: u64, cells: &[u64]) -> u64 {
        let mut v = 0u64;
        let mut pos = 0;
        for &cell in cells {
            let size = cell.count_ones() as usize;
            let ones = (row & cell).count_ones() as usize;
            for p in pos + size - ones..pos + size {
                v |= 1 << (self.n - 1 - p);
            }
            pos += size;
        }
        v
    }

    fn run(&mut self, cells: &[u64], used: u64, prefix: &mut Vec<u64>) {
        if self.beaten {
            return;
        }
        let depth = prefix.len();
        if depth == self.n {
            if !self.have_best || prefix[..] < self.best[..] {
                if self.have_best && self.early_exit {
                    self.beaten = true;
                    return;
                }
                self.best.clone_from(prefix);
                self.have_best = true;
            }
            return;
        }
        let mut min = u64::MAX;
        let mut ties: Vec<usize> = Vec::new();
        for i in (0..self.n).filter(|&i| used >> i & 1 == 0) {
            let v = self.value(self.rows[i], cells);
            if v < min {
                min = v;
                ties.clear();
            }
            if v == min && !ties.iter().any(|&t| self.rows[t] == self.rows[i]) {
                ties.push(i);
            }
        }
        prefix.push(min);
        if self.have_best && prefix[..] > self.best[..=depth] {
            prefix.pop();
            return;
        }
        for r in ties {
            let row = self.rows[r];
            let refined: Vec<u64> = cells
                .iter()
                .flat_map(|&c| [c & !row, c & row])
                .filter(|&c| c != 0)
                .collect();
            self.run(&refined, used | 1 << r, prefix);
        }
        prefix.pop();
    }
}

fn full_cell(n: usize) -> u64 {
    // cells hold column masks in the same MSB-first layout as rows
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Rows of the class representative of `m`.
pub fn canonical_rows(m: &BinaryMatrix) -> Vec<u64> {
    let mut s = CanonSearch {
        n: m.n,
        rows: &m.rows,
        best: Vec::new(),
        have_best: false,
        early_exit: false,
        beaten: false,
    };
    s.run(&[full_cell(m.n)], 0, &mut Vec::new());
    s.best
}

/// Whether `m` is its own class representative. `m` must have sorted rows.
fn is_canonical(m: &BinaryMatrix) -> bool {
    let mut s = CanonSearch {
        n: m.n,
        rows: &m.rows,
        best: m.rows.clone(),
        have_best: true,
        early_exit: true,
        beaten: false,
    };
    s.run(&[full_cell(m.n)], 0, &mut Vec::new());
    !s.beaten
}

pub fn canonical_matrix(m: &BinaryMatrix) -> BinaryMatrix {
    BinaryMatrix::from_masks(m.n, canonical_rows(m))
}

fn hex_key(n: usize, rows: &[u64]) -> String {
    let width = n.div_ceil(4);
    rows.iter()
        .map(|r| format!("{r:0width$x}"))
        .collect::<Vec<_>>()
        .join(".")
}

/// Hex row masks of `m` exactly as given. For an enumerated representative
/// this equals its [`canonical_key`].
pub fn row_key(m: &BinaryMatrix) -> String {
    hex_key(m.n, &m.rows)
}

/// Hex row masks of the class representative; equal exactly when the
/// matrices are related by row and column permutations.
pub fn canonical_key(m: &BinaryMatrix) -> String {
    hex_key(m.n, &canonical_rows(m))
}

/// Like [`canonical_key`] but also identifies a matrix with its transpose
/// (swapping the two sides of the graph).
pub fn canonical_key_with_transpose(m: &BinaryMatrix) -> String {
    canonical_key(m).min(canonical_key(&m.transpose()))
}

fn check_caps(n: usize, k: usize, allow_large: bool) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::precondition(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let limit = if allow_large { SCAN_CAP_LARGE } else { SCAN_CAP };
    if n > limit {
        return Err(Error::Capacity {
            what: "enumeration side size",
            requested: n,
            limit,
        });
    }
    Ok(())
}

struct Generator {
    n: usize,
    k: usize,
    candidates: Vec<u64>,
    rows: Vec<u64>,
    col_sums: Vec<usize>,
    /// bit j set while columns j and j+1 agree on every row so far
    tied: u64,
    out: Vec<BiadjacencyMatrix>,
}

impl Generator {
    fn bit(&self, row: u64, j: usize) -> bool {
        row >> (self.n - 1 - j) & 1 == 1
    }

    fn run(&mut self, start: usize) {
        let i = self.rows.len();
        if i == self.n {
            let m = BinaryMatrix::from_masks(self.n, self.rows.clone());
            if is_canonical(&m) {
                self.out.push(BiadjacencyMatrix { k: self.k, matrix: m });
            }
            return;
        }
        let remaining = self.n - i - 1;
        for c in start..self.candidates.len() {
            let row = self.candidates[c];
            let mut ok = true;
            let mut tied = self.tied;
            for j in 0..self.n {
                let s = self.col_sums[j] + self.bit(row, j) as usize;
                if s > self.k || self.k - s > remaining {
                    ok = false;
                    break;
                }
                if j + 1 < self.n && tied >> j & 1 == 1 {
                    match (self.bit(row, j), self.bit(row, j + 1)) {
                        (true, false) => {
                            ok = false;
                            break;
                        }
                        (false, true) => tied &= !(1 << j),
                        _ => {}
                    }
                }
            }
            if !ok {
                continue;
            }
            let saved = self.tied;
            self.tied = tied;
            for j in 0..self.n {
                self.col_sums[j] += self.bit(row, j) as usize;
            }
            self.rows.push(row);
            self.run(c);
            self.rows.pop();
            for j in 0..self.n {
                self.col_sums[j] -= self.bit(row, j) as usize;
            }
            self.tied = saved;
        }
    }
}

/// One representative per row/column-permutation class of k-regular n×n
/// matrices, in increasing order of their row sequences.
pub fn enumerate_kreg(n: usize, k: usize, allow_large: bool) -> Result<Vec<BiadjacencyMatrix>> {
    check_caps(n, k, allow_large)?;
    let candidates: Vec<u64> = (0..1u64 << n).filter(|r| r.count_ones() as usize == k).collect();
    let mut g = Generator {
        n,
        k,
        candidates,
        rows: Vec::with_capacity(n),
        col_sums: vec![0; n],
        tied: if n >= 2 { (1u64 << (n - 1)) - 1 } else { 0 },
        out: Vec::new(),
    };
    g.run(0);
    Ok(g.out)
}

/// Representatives with classes that differ only by a transpose merged;
/// the first representative in enumeration order is kept.
pub fn enumerate_kreg_modulo_transpose(n: usize, k: usize, allow_large: bool) -> Result<Vec<BiadjacencyMatrix>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for m in enumerate_kreg(n, k, allow_large)? {
        if seen.insert(canonical_key_with_transpose(&m)) {
            out.push(m);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KPlus2Case {
    /// every row's two zero columns are identical columns
    Gamma4Form,
    /// some row's two zero columns differ
    Gamma3Form,
}

/// Splits n = k+2 matrices by whether N(b1) △ N(b2) is empty for the two
/// non-neighbours b1, b2 of every a.
pub fn classify_k_plus_2(m: &BiadjacencyMatrix) -> Result<KPlus2Case> {
    if m.n() != m.k() + 2 {
        return Err(Error::precondition(format!("need n = k + 2, got n={}, k={}", m.n(), m.k())));
    }
    let cols = m.transpose();
    for i in 0..m.n() {
        let zeros: Vec<usize> = (0..m.n()).filter(|&j| !m.get(i, j)).collect();
        if cols.masks()[zeros[0]] != cols.masks()[zeros[1]] {
            return Ok(KPlus2Case::Gamma3Form);
        }
    }
    Ok(KPlus2Case::Gamma4Form)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormCheck {
    pub unique_form: bool,
    pub note: Option<&'static str>,
}

/// Whether `m` is all-ones minus n/2 disjoint 2×2 zero blocks up to row
/// and column permutations.
pub fn is_unique_form(m: &BiadjacencyMatrix) -> FormCheck {
    let n = m.n();
    if n != m.k() + 2 {
        return FormCheck {
            unique_form: false,
            note: Some("n != k + 2"),
        };
    }
    if n % 2 == 1 {
        return FormCheck {
            unique_form: false,
            note: Some("odd order"),
        };
    }
    let pairs_of = |masks: &[u64]| {
        let mut groups: BTreeMap<u64, usize> = BTreeMap::new();
        for &r in masks {
            *groups.entry(r).or_default() += 1;
        }
        groups.values().all(|&c| c == 2).then(|| groups.into_keys().collect::<Vec<_>>())
    };
    let full = full_cell(n);
    let holds = match (pairs_of(m.masks()), pairs_of(m.transpose().masks())) {
        (Some(rows), Some(_)) => {
            // zero sets of the row pairs must tile the columns
            let mut covered = 0u64;
            rows.iter().all(|&r| {
                let zeros = !r & full;
                let fresh = covered & zeros == 0;
                covered |= zeros;
                fresh
            }) && covered == full
        }
        _ => false,
    };
    FormCheck {
        unique_form: holds,
        note: None,
    }
}

/// The all-ones matrix minus `n/2` disjoint 2×2 diagonal zero blocks.
pub fn block_form(n: usize) -> Result<BiadjacencyMatrix> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::precondition(format!("block form needs even n >= 4, got {n}")));
    }
    let rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i / 2 != j / 2).collect()).collect();
    BiadjacencyMatrix::from_rows(&rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    Gamma2,
    Gamma3,
    Gamma4UniqueForm,
    Other,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Gamma2 => "gamma2",
            CaseTag::Gamma3 => "gamma3",
            CaseTag::Gamma4UniqueForm => "gamma4-unique-form",
            CaseTag::Other => "other",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub key: String,
    pub n: usize,
    pub k: usize,
    pub gamma: usize,
    pub conj_bound: usize,
    /// 2r with r = n − k; absent when r = 0
    pub order_bound: Option<usize>,
    pub case: CaseTag,
    pub connected: bool,
    pub conj_violation: bool,
    pub order_violation: bool,
    /// n = k + 2 only: the structural split, and whether it agrees with γ
    pub k_plus_2: Option<KPlus2Case>,
    pub unique_form: bool,
    pub witness: DominatingSet,
    #[serde(flatten)]
    pub obstruction: ObstructionReport,
    #[serde(skip)]
    pub matrix: BiadjacencyMatrix,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    pub allow_large: bool,
    /// also identify a matrix with its transpose
    pub transpose_quotient: bool,
}

/// γ, bounds, classification and obstruction data for one class.
pub fn scan_record(m: &BiadjacencyMatrix) -> ScanRecord {
    let (n, k) = (m.n(), m.k());
    let g = m.to_graph();
    let (gamma, witness) = gamma_exact(&g);
    let conj_bound = conjectured_kreg_bound(n, k).expect("1 <= k <= n");
    let order_bound = kreg_order_bound(n, k).ok();
    let form = is_unique_form(m);
    let k_plus_2 = classify_k_plus_2(m).ok();
    let case = match gamma {
        _ if n > k + 2 => CaseTag::Other,
        2 => CaseTag::Gamma2,
        3 => CaseTag::Gamma3,
        4 if form.unique_form => CaseTag::Gamma4UniqueForm,
        _ => CaseTag::Other,
    };
    ScanRecord {
        key: row_key(m),
        n,
        k,
        gamma,
        conj_bound,
        order_bound,
        case,
        connected: g.is_connected(),
        conj_violation: gamma > conj_bound,
        order_violation: order_bound.is_some_and(|b| gamma > b),
        k_plus_2,
        unique_form: form.unique_form,
        witness,
        obstruction: obstruction_report(m),
        matrix: m.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub n: usize,
    pub k: usize,
    pub classes: usize,
    pub connected: usize,
    pub max_gamma: usize,
    pub conj_violations: usize,
    pub order_violations: usize,
    pub obstruction_violations: usize,
    pub gamma4_classes: usize,
}

pub fn summarize(n: usize, k: usize, records: &[ScanRecord]) -> ScanSummary {
    ScanSummary {
        n,
        k,
        classes: records.len(),
        connected: records.iter().filter(|r| r.connected).count(),
        max_gamma: records.iter().map(|r| r.gamma).max().unwrap_or(0),
        conj_violations: records.iter().filter(|r| r.conj_violation).count(),
        order_violations: records.iter().filter(|r| r.order_violation).count(),
        obstruction_violations: records.iter().filter(|r| !r.obstruction.implication_holds).count(),
        gamma4_classes: records.iter().filter(|r| r.gamma == 4).count(),
    }
}

/// Every class at (n, k) with its record, in enumeration order. Records are
/// computed on the current rayon pool.
pub fn scan_conjecture(n: usize, k: usize, opts: ScanOptions) -> Result<(Vec<ScanRecord>, ScanSummary)> {
    let classes = if opts.transpose_quotient {
        enumerate_kreg_modulo_transpose(n, k, opts.allow_large)?
    } else {
        enumerate_kreg(n, k, opts.allow_large)?
    };
    let records: Vec<ScanRecord> = classes.par_iter().map(scan_record).collect();
    let summary = summarize(n, k, &records);
    Ok((records, summary))
}

/// Recomputes γ for a record by exhaustive search, for confirming a bound
/// violation independently of the branch-and-bound solver.
pub fn oracle_gamma(record: &ScanRecord) -> Result<usize> {
    let g = record.matrix.to_graph();
    if g.order() > BRUTE_FORCE_MAX {
        return Err(Error::Capacity {
            what: "brute-force oracle order",
            requested: g.order(),
            limit: BRUTE_FORCE_MAX,
        });
    }
    gamma_brute(&g)
}

/// Vertex set `{a_i} ∪ {b_j}` in the graph of an n×n matrix.
pub fn matrix_vertices(n: usize, a: &[usize], b: &[usize]) -> VertexSet {
    VertexSet::from_indices(2 * n, a.iter().copied().chain(b.iter().map(|&j| n + j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// min over column permutations of the row-sorted matrix, by brute force
    fn brute_key(n: usize, rows: &[u64], col_perms: &[Vec<usize>]) -> Vec<u64> {
        col_perms
            .iter()
            .map(|p| {
                let mut r: Vec<u64> = rows
                    .iter()
                    .map(|&row| {
                        (0..n)
                            .filter(|&j| row >> (n - 1 - j) & 1 == 1)
                            .fold(0u64, |acc, j| acc | 1 << (n - 1 - p[j]))
                    })
                    .collect();
                r.sort_unstable();
                r
            })
            .min()
            .unwrap()
    }

    fn all_regular(n: usize, k: usize) -> Vec<Vec<u64>> {
        let cands: Vec<u64> = (0..1u64 << n).filter(|r| r.count_ones() as usize == k).collect();
        let mut out = Vec::new();
        let mut rows = Vec::new();
        fn rec(n: usize, k: usize, cands: &[u64], rows: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if rows.len() == n {
                let ok = (0..n).all(|j| rows.iter().filter(|&&r| r >> j & 1 == 1).count() == k);
                if ok {
                    out.push(rows.clone());
                }
                return;
            }
            for &c in cands {
                rows.push(c);
                rec(n, k, cands, rows, out);
                rows.pop();
            }
        }
        rec(n, k, &cands, &mut rows, &mut out);
        out
    }

    fn brute_classes(n: usize, k: usize) -> BTreeSet<Vec<u64>> {
        let p = perms(n);
        all_regular(n, k).iter().map(|rows| brute_key(n, rows, &p)).collect()
    }

    #[test]
    fn matches_brute_force_quotient() {
        for n in 1..=5 {
            for k in 1..=n {
                let expected = brute_classes(n, k);
                let got: BTreeSet<Vec<u64>> = enumerate_kreg(n, k, false)
                    .unwrap()
                    .iter()
                    .map(|m| m.masks().to_vec())
                    .collect();
                assert_eq!(got, expected, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn matches_brute_force_quotient_at_six() {
        for k in [2, 3] {
            let got = enumerate_kreg(6, k, false).unwrap();
            assert_eq!(got.len(), brute_classes(6, k).len(), "k={k}");
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_kreg(3, 2, false).unwrap().len(), 1);
        for n in 1..=7 {
            let all = enumerate_kreg(n, n, false).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].masks(), vec![full_cell(n); n]);
        }
        // 2-regular: disjoint unions of even cycles C_{2a}, a ≥ 2, with
        // parts summing to n, i.e. partitions of n into parts ≥ 2
        assert_eq!(enumerate_kreg(4, 2, false).unwrap().len(), 2);
        assert_eq!(enumerate_kreg(6, 2, false).unwrap().len(), 4);
        assert_eq!(enumerate_kreg(7, 2, false).unwrap().len(), 4);
        assert!(matches!(enumerate_kreg(8, 2, false), Err(Error::Capacity { .. })));
        assert!(enumerate_kreg(3, 4, false).is_err());
    }

    #[test]
    fn keys_are_permutation_invariant() {
        let m = BiadjacencyMatrix::from_text(CUBIC6).unwrap();
        let key = canonical_key(&m);
        let rp = [3, 0, 5, 1, 4, 2];
        let cp = [2, 4, 0, 5, 3, 1];
        assert_eq!(canonical_key(&m.permuted(&rp, &cp)), key);
        assert_eq!(canonical_key(&m.permuted(&[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4, 5])), key);
        let ones = BiadjacencyMatrix::from_rows(&vec![vec![true; 4]; 4]).unwrap();
        assert_eq!(canonical_key(&ones), "f.f.f.f");
        let two = enumerate_kreg(4, 2, false).unwrap();
        assert_ne!(canonical_key(&two[0]), canonical_key(&two[1]));
        // randomly permuted copies of every n = 5 class
        let p = perms(5);
        for m in enumerate_kreg(5, 2, false).unwrap() {
            for (i, rp) in p.iter().enumerate().step_by(7) {
                let cp = &p[(i * 13) % p.len()];
                assert_eq!(canonical_rows(&m.permuted(rp, cp)), m.masks());
            }
        }
    }

    const CUBIC6: &str = "110100\n011010\n001101\n100110\n010011\n101001\n";
    const BLOCK6: &str = "001111\n001111\n110011\n110011\n111100\n111100\n";

    #[test]
    fn cubic_six_matrix() {
        let m = BiadjacencyMatrix::from_text(CUBIC6).unwrap();
        assert_eq!((m.n(), m.k()), (6, 3));
        let g = m.to_graph();
        assert!(crate::domination::is_dominating(&g, &matrix_vertices(6, &[1, 4], &[0, 3])));
        assert_eq!(gamma_exact(&g).0, 4);
        assert!(!is_unique_form(&m).unique_form);
        let classes = enumerate_kreg(6, 3, false).unwrap();
        let key = canonical_key(&m);
        assert!(classes.iter().any(|c| hex_key(6, c.masks()) == key));
    }

    #[test]
    fn block_six_matrix() {
        let m = BiadjacencyMatrix::from_text(BLOCK6).unwrap();
        assert_eq!(m, block_form(6).unwrap());
        assert_eq!(classify_k_plus_2(&m).unwrap(), KPlus2Case::Gamma4Form);
        assert!(is_unique_form(&m).unique_form);
        let (records, summary) = scan_conjecture(6, 4, ScanOptions::default()).unwrap();
        assert_eq!(summary.gamma4_classes, 1);
        let four: Vec<_> = records.iter().filter(|r| r.gamma == 4).collect();
        assert_eq!(four[0].key, canonical_key(&m));
        assert_eq!(four[0].case, CaseTag::Gamma4UniqueForm);
    }

    #[test]
    fn k_plus_2_classification_matches_gamma() {
        for (n, k) in [(4, 2), (5, 3), (6, 4), (7, 5)] {
            for m in enumerate_kreg(n, k, false).unwrap() {
                let gamma = gamma_brute(&m.to_graph()).unwrap();
                let case = classify_k_plus_2(&m).unwrap();
                let expected = if gamma == 4 { KPlus2Case::Gamma4Form } else { KPlus2Case::Gamma3Form };
                assert_eq!(case, expected, "{m}");
                assert_eq!(is_unique_form(&m).unique_form, gamma == 4);
            }
        }
        let perm_complement: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i != j).collect()).collect();
        let m = BiadjacencyMatrix::from_rows(&perm_complement).unwrap();
        assert!(classify_k_plus_2(&m).is_err());
        let odd = enumerate_kreg(5, 3, false).unwrap();
        assert_eq!(is_unique_form(&odd[0]).note, Some("odd order"));
    }

    #[test]
    fn transpose_quotient_never_grows() {
        for (n, k) in [(5, 2), (6, 3)] {
            let plain = enumerate_kreg(n, k, false).unwrap().len();
            let quotient = enumerate_kreg_modulo_transpose(n, k, false).unwrap().len();
            assert!(quotient <= plain);
        }
    }

    #[test]
    fn rejects_irregular() {
        assert!(BiadjacencyMatrix::from_text("110\n011\n100\n").is_err());
        assert!(BiadjacencyMatrix::from_text("000\n000\n000\n").is_err());
    }
}
