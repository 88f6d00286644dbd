//! Exact rank over the rationals and one-sided disjoint row covers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kregular::{BiadjacencyMatrix, BinaryMatrix};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::precondition("rows of unequal length"));
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&b| int(b as usize)).collect()).collect())
    }

    pub fn from_binary(m: &BinaryMatrix) -> Self {
        let rows = (0..m.n()).map(|i| m.row(i)).collect::<Vec<_>>();
        Self::from_bools(&rows).expect("square")
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

/// Rank by fraction-free (Bareiss) elimination. Each row is first scaled by
/// the lcm of its denominators, which does not change the rank.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (nr, nc) = m.dims();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..nr {
            for c in col + 1..nc {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Checks Σ rows = k·1 exactly, so every complement 1 − r equals
/// (1/k)·Σ rows − r, a rational combination of rows.
pub fn complement_identity_check(m: &BinaryMatrix) -> Result<bool> {
    let Some(k) = m.regularity() else {
        return Err(Error::precondition("row and column sums are not all equal"));
    };
    if k == 0 {
        return Err(Error::precondition("zero matrix"));
    }
    let r = RationalMatrix::from_binary(m);
    let n = m.n();
    let sum: Vec<Rational> = (0..n).map(|j| r.rows.iter().map(|row| &row[j]).sum()).collect();
    if sum.iter().any(|s| *s != int(k)) {
        return Ok(false);
    }
    let inv_k = Rational::new(1.into(), k.into());
    Ok(r.rows.iter().all(|row| {
        (0..n).all(|j| &sum[j] * &inv_k - &row[j] == int(1) - &row[j])
    }))
}

struct Cover<'a> {
    n: usize,
    rows: &'a [u64],
    wanted: usize,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
}

impl Cover<'_> {
    fn run(&mut self, covered: u64, full: u64) {
        if covered == full {
            if self.chosen.len() == self.wanted {
                let mut c = self.chosen.clone();
                c.sort_unstable();
                if self.best.as_ref().is_none_or(|b| c < *b) {
                    self.best = Some(c);
                }
            }
            return;
        }
        if self.chosen.len() == self.wanted {
            return;
        }
        // column with the fewest rows still able to cover it
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for j in 0..self.n {
            let bit = 1u64 << (self.n - 1 - j);
            if covered & bit != 0 {
                continue;
            }
            let options: Vec<usize> = (0..self.rows.len())
                .filter(|&i| self.rows[i] & bit != 0 && self.rows[i] & covered == 0 && !self.chosen.contains(&i))
                .collect();
            if pick.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                pick = Some((j, options));
            }
        }
        let (_, options) = pick.expect("some column is uncovered");
        for i in options {
            self.chosen.push(i);
            self.run(covered | self.rows[i], full);
            self.chosen.pop();
        }
    }
}

/// `rows_wanted` rows with pairwise disjoint supports covering every
/// column; the lexicographically first such index set.
pub fn disjoint_row_cover(m: &BinaryMatrix, rows_wanted: usize) -> Option<Vec<usize>> {
    if rows_wanted == 0 {
        return None;
    }
    let n = m.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut c = Cover {
        n,
        rows: m.masks(),
        wanted: rows_wanted,
        chosen: Vec::new(),
        best: None,
    };
    c.run(0, full);
    c.best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub rank: usize,
    pub full_rank: bool,
    /// n/k, rounded up when k does not divide n
    pub m: usize,
    pub m_integral: bool,
    pub cover_exists: bool,
    pub cover_witness: Option<Vec<usize>>,
    /// full rank ⟹ no m-row cover
    pub implication_holds: bool,
}

/// Rank and cover search run independently, then the implication
/// "full rank ⟹ no m-row disjoint cover" is evaluated on the results.
pub fn obstruction_report(m: &BiadjacencyMatrix) -> ObstructionReport {
    let n = m.n();
    let rank = rank_exact(&RationalMatrix::from_binary(m));
    let cover_rows = n.div_ceil(m.k());
    let witness = disjoint_row_cover(m, cover_rows);
    let full_rank = rank == n;
    ObstructionReport {
        rank,
        full_rank,
        m: cover_rows,
        m_integral: n.is_multiple_of(m.k()),
        cover_exists: witness.is_some(),
        implication_holds: !(full_rank && witness.is_some()),
        cover_witness: witness,
    }
}
