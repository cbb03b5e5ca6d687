//! Partitions and Young diagram combinatorics.
//!
//! Boxes use 1-based `(row, col)` coordinates; the box in row `i`, column `j`
//! has content `j - i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An integer partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A box of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// Frobenius coordinates `(a_1, ..., a_k | l_1, ..., l_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusCoordinates {
    pub arms: Vec<usize>,
    pub legs: Vec<usize>,
}

impl FrobeniusCoordinates {
    pub fn new(arms: Vec<usize>, legs: Vec<usize>) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::InvalidPartition(format!(
                "{} arms but {} legs",
                arms.len(),
                legs.len()
            )));
        }
        let strictly_decreasing = |v: &[usize]| v.windows(2).all(|w| w[0] > w[1]);
        if !strictly_decreasing(&arms) || !strictly_decreasing(&legs) {
            return Err(Error::InvalidPartition(
                "Frobenius coordinates must be strictly decreasing".into(),
            ));
        }
        Ok(FrobeniusCoordinates { arms, legs })
    }

    /// Number of diagonal boxes.
    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    /// Diagonal hook lengths `n_i = a_i + l_i + 1`.
    pub fn hook_lengths(&self) -> Vec<usize> {
        self.arms.iter().zip(&self.legs).map(|(a, l)| a + l + 1).collect()
    }

    /// Row of the diagonal box inside each hook, `r_i = l_i + 1`.
    pub fn hook_rows(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l + 1).collect()
    }

    pub fn to_partition(&self) -> Partition {
        let k = self.rank();
        let rows = if k == 0 { 0 } else { self.legs[0] + 1 };
        let parts = (1..=rows)
            .map(|i| {
                let arm = if i <= k { self.arms[i - 1] + 1 } else { 0 };
                let from_legs = (1..i.min(k + 1)).filter(|&t| self.legs[t - 1] >= i - t).count();
                arm + from_legs
            })
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for FrobeniusCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.arms), join(&self.legs))
    }
}

/// A finite multiset of integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMultiset {
    counts: BTreeMap<i64, usize>,
}

impl IntegerMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, value: i64) {
        *self.counts.entry(value).or_insert(0) += 1;
    }

    pub fn insert_many(&mut self, value: i64, count: usize) {
        if count > 0 {
            *self.counts.entry(value).or_insert(0) += count;
        }
    }

    /// Removes one copy of `value`; returns false if it was absent.
    pub fn remove(&mut self, value: i64) -> bool {
        match self.counts.get_mut(&value) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(&value);
                true
            }
            None => false,
        }
    }

    pub fn count(&self, value: i64) -> usize {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Total number of elements, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max(&self) -> Option<i64> {
        self.counts.keys().next_back().copied()
    }

    pub fn min(&self) -> Option<i64> {
        self.counts.keys().next().copied()
    }

    /// `(value, count)` pairs in increasing value order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn to_sorted_vec(&self) -> Vec<i64> {
        self.iter().flat_map(|(v, c)| std::iter::repeat_n(v, c)).collect()
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> IntegerMultiset {
        let mut out = IntegerMultiset::new();
        for (v, c) in self.iter() {
            out.insert_many(f(v), c);
        }
        out
    }
}

impl FromIterator<i64> for IntegerMultiset {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        let mut m = IntegerMultiset::new();
        for v in iter {
            m.insert(v);
        }
        m
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition {
            parts: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(a + 1, 1^l)`, i.e. `(a | l)` in Frobenius notation.
    pub fn hook(arm: usize, leg: usize) -> Self {
        let mut parts = vec![arm + 1];
        parts.extend(std::iter::repeat_n(1, leg));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` for 1-based `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    /// Boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn frobenius(&self) -> FrobeniusCoordinates {
        let conj = self.conjugate();
        let k = (1..=self.len()).take_while(|&i| self.part(i) >= i).count();
        FrobeniusCoordinates {
            arms: (1..=k).map(|i| self.part(i) - i).collect(),
            legs: (1..=k).map(|i| conj.part(i) - i).collect(),
        }
    }

    pub fn contents(&self) -> IntegerMultiset {
        self.cells().map(|c| c.content()).collect()
    }

    /// Multiset of hook lengths `λ_i - j + λ*_j - i + 1`.
    pub fn hooks(&self) -> IntegerMultiset {
        let conj = self.conjugate();
        self.cells().map(|c| hook_length(self, &conj, c)).collect()
    }

    pub fn hook_length(&self, cell: Cell) -> Result<i64> {
        self.check_cell(cell)?;
        Ok(hook_length(self, &self.conjugate(), cell))
    }

    /// Number of boxes strictly below `cell` in its column.
    pub fn leg_length(&self, cell: Cell) -> Result<usize> {
        self.check_cell(cell)?;
        Ok(self.conjugate().part(cell.col) - cell.row)
    }

    /// Multiset `{λ_{l(□)+1} - c(□)}` over boxes, `l(□)` the leg length.
    pub fn cm_exponents(&self) -> IntegerMultiset {
        let conj = self.conjugate();
        self.cells().map(|c| cm_exponent(self, &conj, c)).collect()
    }

    /// The box `(λ*_j - i + 1, j)` paired with `(i, j)`: the bottom box of
    /// column `j` reflected through the leg of `(i, j)`.
    pub fn box_star(&self, cell: Cell) -> Result<Cell> {
        self.check_cell(cell)?;
        let conj = self.conjugate();
        Ok(Cell::new(conj.part(cell.col) - cell.row + 1, cell.col))
    }

    /// Each part repeated twice.
    pub fn doubled(&self) -> Partition {
        Partition {
            parts: self.parts.iter().flat_map(|&p| [p, p]).collect(),
        }
    }

    /// Hermite degrees `k_i = λ_i + l - i`, strictly decreasing.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let l = self.len();
        self.parts.iter().enumerate().map(|(i, &p)| p + l - (i + 1)).collect()
    }

    fn check_cell(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::BoxOutsideDiagram {
                row: cell.row,
                col: cell.col,
            })
        }
    }
}

fn hook_length(p: &Partition, conj: &Partition, c: Cell) -> i64 {
    (p.part(c.row) + conj.part(c.col) + 1) as i64 - (c.row + c.col) as i64
}

fn cm_exponent(p: &Partition, conj: &Partition, c: Cell) -> i64 {
    let leg = conj.part(c.col) - c.row;
    p.part(leg + 1) as i64 - c.content()
}

/// Inverts [`Partition::contents`] by peeling rows greedily: row `i` is the
/// interval `1-i ..= max-remaining`.
pub fn partition_from_contents(contents: &IntegerMultiset) -> Result<Partition> {
    let mut rest = contents.clone();
    let mut parts: Vec<usize> = Vec::new();
    while let Some(top) = rest.max() {
        let i = parts.len() as i64 + 1;
        let len = top + i;
        if len <= 0 {
            return Err(Error::NotAContentMultiset);
        }
        let len = len as usize;
        if parts.last().is_some_and(|&prev| len > prev) {
            return Err(Error::NotAContentMultiset);
        }
        for c in (1 - i)..=top {
            if !rest.remove(c) {
                return Err(Error::NotAContentMultiset);
            }
        }
        parts.push(len);
    }
    Ok(Partition { parts })
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `1 <= |λ| <= n`, grouped by size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (1..=n).flat_map(enumerate_partitions).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"4,3,1"`; `"0"` (or an empty string) is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
