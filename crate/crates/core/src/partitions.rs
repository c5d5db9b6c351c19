//! Partitions, plane partitions, interlacing and diagonal slices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition stored as its nonzero parts in weakly decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidParameter("zero part before a positive part".into()));
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from parts already known to be valid.
    pub(crate) fn from_parts_unchecked(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` for 1-based `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        let parts = (1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect();
        Partition(parts)
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_value(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// True when the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Hook length of the box in row `i`, column `j` (both 0-based).
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        let arm = self.0[i] - j as u32 - 1;
        let leg = self.0[i + 1..].iter().filter(|&&p| p > j as u32).count() as u32;
        arm + leg + 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,1"`, `"(2,1)"`, `""` or `"()"`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() || trimmed == "0" {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::InvalidParameter(format!("bad part {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

/// Plane partition stored as ragged rows; entries past the stored extent are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|mut r| {
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            })
            .collect();
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] < w[1]) || row.contains(&0) {
                return Err(Error::InvalidParameter(format!("row {i} is not a partition")));
            }
            if i > 0 {
                let above = &rows[i - 1];
                if row.len() > above.len() || row.iter().zip(above).any(|(b, a)| b > a) {
                    return Err(Error::InvalidParameter(format!("row {i} exceeds the row above")));
                }
            }
        }
        Ok(PlanePartition { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `π_{ij}` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn volume(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Diagonal slices `π(m) = (π_{i,i+m})` for `m` in `[-(rows-1), cols-1]`.
    pub fn diagonal_slices(&self) -> DiagonalSlices {
        if self.rows.is_empty() {
            return DiagonalSlices { first: 0, slices: Vec::new() };
        }
        let first = -(self.num_rows() as i64 - 1);
        let last = self.num_cols() as i64 - 1;
        let slices = (first..=last)
            .map(|m| {
                let (i0, j0) = if m >= 0 { (0, m as usize) } else { ((-m) as usize, 0) };
                let parts = (0..).map(|d| self.entry(i0 + d, j0 + d)).take_while(|&x| x > 0).collect();
                Partition::from_parts_unchecked(parts)
            })
            .collect();
        DiagonalSlices { first, slices }
    }

    /// Rebuilds a plane partition from its slices.
    pub fn from_slices(slices: &DiagonalSlices) -> Result<Self> {
        let mut cells: Vec<Vec<u32>> = Vec::new();
        for (idx, slice) in slices.slices.iter().enumerate() {
            let m = slices.first + idx as i64;
            for (d, &v) in slice.parts().iter().enumerate() {
                let (i, j) = if m >= 0 { (d, m as usize + d) } else { ((-m) as usize + d, d) };
                if cells.len() <= i {
                    cells.resize(i + 1, Vec::new());
                }
                if cells[i].len() <= j {
                    cells[i].resize(j + 1, 0);
                }
                cells[i][j] = v;
            }
        }
        PlanePartition::new(cells)
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl TryFrom<Vec<Vec<u32>>> for PlanePartition {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        PlanePartition::new(rows)
    }
}

impl From<PlanePartition> for Vec<Vec<u32>> {
    fn from(p: PlanePartition) -> Self {
        p.rows
    }
}

/// The finitely supported family `m ↦ π(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSlices {
    first: i64,
    slices: Vec<Partition>,
}

impl DiagonalSlices {
    /// Slice `π(m)`; empty outside the stored range.
    pub fn get(&self, m: i64) -> Partition {
        let idx = m - self.first;
        if idx < 0 {
            return Partition::empty();
        }
        self.slices.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Stored index range `[first, last]`; empty when there are no slices.
    pub fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.first..=(self.first + self.slices.len() as i64 - 1)
    }

    pub fn total_degree(&self) -> u32 {
        self.slices.iter().map(Partition::degree).sum()
    }

    /// Checks `… ≺ π(-1) ≺ π(0) ≻ π(1) ≻ …`, including the empty ends.
    pub fn is_interlacing_chain(&self) -> bool {
        let lo = self.first - 1;
        let hi = self.first + self.slices.len() as i64;
        (lo..hi).all(|m| {
            let (a, b) = (self.get(m), self.get(m + 1));
            if m < 0 {
                interlaces(&b, &a)
            } else {
                interlaces(&a, &b)
            }
        })
    }
}

/// `λ ≻ μ`, i.e. `λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ …`.
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    let n = lambda.len().max(mu.len()) + 1;
    (1..=n).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}

/// Hook lengths (row-major order) and `n(λ)`.
pub fn hooks_and_n(lambda: &Partition) -> (Vec<u32>, u64) {
    let mut hooks = Vec::with_capacity(lambda.degree() as usize);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            hooks.push(lambda.hook(i, j));
        }
    }
    (hooks, lambda.n_value())
}

/// All partitions of `n` in lexicographic order of their part sequences.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in 1..=remaining.min(max) {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of every degree `0..=n`, grouped by degree.
pub fn enumerate_partitions(n: u32) -> Vec<Vec<Partition>> {
    (0..=n).map(partitions_of).collect()
}

/// Flat list of partitions with degree at most `n`, ordered by degree.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    enumerate_partitions(n).into_iter().flatten().collect()
}

/// Plane partitions of every volume `0..=n`, grouped by volume, each group
/// in lexicographic order of the row arrays.
pub fn enumerate_plane_partitions(n: u32) -> Vec<Vec<PlanePartition>> {
    fn rows_below(bound: &[u32], budget: u32, row: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(row.clone());
        let j = row.len();
        if j >= bound.len() {
            return;
        }
        let cap = bound[j].min(row.last().copied().unwrap_or(u32::MAX)).min(budget);
        for v in 1..=cap {
            row.push(v);
            rows_below(bound, budget - v, row, out);
            row.pop();
        }
    }
    fn rec(budget: u32, bound: &[u32], rows: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<PlanePartition>>) {
        let used: u32 = rows.iter().flatten().sum();
        out[used as usize].push(PlanePartition { rows: rows.clone() });
        let mut candidates = Vec::new();
        rows_below(bound, budget, &mut Vec::new(), &mut candidates);
        for row in candidates.into_iter().filter(|r| !r.is_empty()) {
            let s: u32 = row.iter().sum();
            rows.push(row.clone());
            rec(budget - s, &row, rows, out);
            rows.pop();
        }
    }
    let mut out = vec![Vec::new(); n as usize + 1];
    let unbounded = vec![u32::MAX; n as usize];
    rec(n, &unbounded, &mut Vec::new(), &mut out);
    for group in &mut out {
        group.sort();
    }
    out
}

/// All `μ ≻ λ` with `|μ/λ| ≤ max_size`, i.e. `λ` plus a horizontal strip.
pub fn add_horizontal_strips(lambda: &Partition, max_size: u32) -> Vec<Partition> {
    let n = lambda.len() + 1;
    let mut out = Vec::new();
    let mut parts = vec![0u32; n];
    fn rec(i: usize, lambda: &Partition, budget: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            out.push(Partition::from_parts_unchecked(parts.clone()));
            return;
        }
        let lo = lambda.part(i + 1);
        let hi = if i == 0 { lo + budget } else { lambda.part(i).min(lo + budget) };
        for v in lo..=hi {
            parts[i] = v;
            rec(i + 1, lambda, budget - (v - lo), parts, out);
        }
    }
    rec(0, lambda, max_size, &mut parts, &mut out);
    out
}

/// All `λ ≺ μ`, i.e. `μ` minus a horizontal strip.
pub fn remove_horizontal_strips(mu: &Partition) -> Vec<Partition> {
    let n = mu.len();
    let mut out = Vec::new();
    let mut parts = vec![0u32; n];
    fn rec(i: usize, mu: &Partition, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            out.push(Partition::from_parts_unchecked(parts.clone()));
            return;
        }
        for v in mu.part(i + 2)..=mu.part(i + 1) {
            parts[i] = v;
            rec(i + 1, mu, parts, out);
        }
    }
    rec(0, mu, &mut parts, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = enumerate_partitions(8).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn plane_partition_counts() {
        let counts: Vec<usize> = enumerate_plane_partitions(6).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24, 48]);
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[2, 1]), &p(&[1])));
        assert!(!interlaces(&p(&[1]), &p(&[2])));
        assert!(interlaces(&p(&[3, 1]), &p(&[3, 1])));
        assert!(!interlaces(&p(&[2, 2]), &p(&[1])));
    }

    #[test]
    fn slices_of_small_plane_partition() {
        let pi = PlanePartition::new(vec![vec![2, 1], vec![1]]).unwrap();
        let s = pi.diagonal_slices();
        assert_eq!(s.get(-1), p(&[1]));
        assert_eq!(s.get(0), p(&[2]));
        assert_eq!(s.get(1), p(&[1]));
        assert_eq!(s.get(5), Partition::empty());
        assert_eq!(s.total_degree(), 4);
        assert!(s.is_interlacing_chain());
        assert_eq!(PlanePartition::from_slices(&s).unwrap(), pi);
    }

    #[test]
    fn empty_plane_partition_slices() {
        let s = PlanePartition::default().diagonal_slices();
        assert_eq!(s.get(0), Partition::empty());
        assert!(s.is_interlacing_chain());
    }

    #[test]
    fn hook_data() {
        assert_eq!(hooks_and_n(&p(&[1])), (vec![1], 0));
        let (mut h, n) = hooks_and_n(&p(&[2, 1]));
        h.sort();
        assert_eq!((h, n), (vec![1, 1, 3], 1));
        let (mut h, n) = hooks_and_n(&p(&[2]));
        h.sort();
        assert_eq!((h, n), (vec![1, 2], 0));
    }

    #[test]
    fn strips() {
        let added = add_horizontal_strips(&p(&[1]), 2);
        assert_eq!(added, vec![p(&[1]), p(&[1, 1]), p(&[2]), p(&[2, 1]), p(&[3])]);
        let mut removed = remove_horizontal_strips(&p(&[2, 1]));
        removed.sort();
        assert_eq!(removed, vec![p(&[1]), p(&[1, 1]), p(&[2]), p(&[2, 1])]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1, 1]).to_string(), "(3,1,1)");
        assert_eq!(p(&[3, 1, 1]).conjugate(), p(&[3, 1, 1]));
        assert_eq!(p(&[4, 2]).conjugate(), p(&[2, 2, 1, 1]));
    }
}
