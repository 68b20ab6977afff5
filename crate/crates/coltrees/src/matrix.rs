//! Coloring matrices, color permutations and the cheap invariants used as
//! pre-filters during classification.
//!
//! Colors are 1-indexed in every public signature. Internally row `i` is a
//! bit mask where column `j` sits at bit `m - 1 - j`, so comparing two rows
//! as integers is the same as comparing their bit strings left to right.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of colors; rows are stored as `u64` masks.
pub const MAX_COLORS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoringMatrix {
    m: usize,
    rows: Vec<u64>,
}

impl ColoringMatrix {
    pub fn zeros(m: usize) -> Self {
        assert!((1..=MAX_COLORS).contains(&m), "unsupported size {m}");
        ColoringMatrix { m, rows: vec![0; m] }
    }

    pub fn ones(m: usize) -> Self {
        let mut a = Self::zeros(m);
        let full = a.full_row();
        a.rows.iter_mut().for_each(|r| *r = full);
        a
    }

    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, |i, j| i == j)
    }

    /// Builds a matrix from a predicate on 1-based `(i, j)`.
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut a = Self::zeros(m);
        for i in 1..=m {
            for j in 1..=m {
                if f(i, j) {
                    a.set(i, j, true);
                }
            }
        }
        a
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::EmptyMatrix);
        }
        if m > MAX_COLORS {
            return Err(Error::OutOfRange {
                what: "matrix size",
                detail: format!("{m} > {MAX_COLORS}"),
            });
        }
        let mut a = Self::zeros(m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: m,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => a.set(i + 1, j + 1, true),
                    other => {
                        return Err(Error::BadEntry {
                            row: i + 1,
                            col: j + 1,
                            found: other.to_string(),
                        })
                    }
                }
            }
        }
        Ok(a)
    }

    /// Decodes the row-major code used by [`ColoringMatrix::code`].
    pub fn from_code(m: usize, code: u64) -> Self {
        assert!(m * m <= 64, "code form needs m*m <= 64");
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let rows = (0..m)
            .map(|i| (code >> (m * (m - 1 - i))) & full)
            .collect();
        ColoringMatrix { m, rows }
    }

    /// Row-major bit string read as a binary number, first entry most
    /// significant. Numeric order equals lexicographic order of the flattening.
    pub fn code(&self) -> u64 {
        assert!(self.m * self.m <= 64, "code form needs m*m <= 64");
        self.rows
            .iter()
            .fold(0u64, |acc, &r| (acc << self.m) | r)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i >= 1 && j >= 1 && i <= self.m && j <= self.m);
        self.rows[i - 1] >> (self.m - j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let bit = 1u64 << (self.m - j);
        if v {
            self.rows[i - 1] |= bit;
        } else {
            self.rows[i - 1] &= !bit;
        }
    }

    /// Colors allowed as children of color `i`, ascending.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        (1..=self.m).filter(|&j| self.get(i, j)).collect()
    }

    pub fn row_ones(&self, i: usize) -> usize {
        self.rows[i - 1].count_ones() as usize
    }

    pub fn ones_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (1..=self.m)
            .map(|i| (1..=self.m).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// Integer matrix product with another 0/1 matrix read as integers.
    pub fn int_product(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        let mut out = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    pub fn to_int(&self) -> Vec<Vec<u64>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(u64::from).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, |i, j| self.get(j, i))
    }

    /// Sum of all entries of `A^n`, computed in `u128`.
    pub fn power_entry_sum(&self, n: u32) -> u128 {
        let m = self.m;
        let mut v = vec![1u128; m];
        for _ in 0..n {
            let mut next = vec![0u128; m];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..m {
                    if self.get(i + 1, j + 1) {
                        *slot += v[j];
                    }
                }
            }
            v = next;
        }
        v.iter().sum()
    }

    fn full_row(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    pub(crate) fn raw_rows(&self) -> &[u64] {
        &self.rows
    }
}

/// Parses `"row;row;..."` with rows over `{0,1}`. Whitespace around rows is ignored.
pub fn parse_matrix(text: &str) -> Result<ColoringMatrix> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    if text.starts_with('[') {
        return parse_matrix_json(text);
    }
    let rows: Vec<&str> = text.split(';').map(str::trim).collect();
    let m = rows.len();
    let mut bits = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != m {
            return Err(Error::RaggedRow {
                row: i + 1,
                expected: m,
                found: chars.len(),
            });
        }
        let mut r = Vec::with_capacity(m);
        for (j, c) in chars.iter().enumerate() {
            match c {
                '0' => r.push(0u8),
                '1' => r.push(1u8),
                other => {
                    return Err(Error::BadEntry {
                        row: i + 1,
                        col: j + 1,
                        found: other.to_string(),
                    })
                }
            }
        }
        bits.push(r);
    }
    ColoringMatrix::from_rows(&bits)
}

/// Parses a JSON array of arrays of 0/1.
pub fn parse_matrix_json(text: &str) -> Result<ColoringMatrix> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    let rows = value.as_array().ok_or(Error::Parse {
        pos: 0,
        msg: "expected an array of rows".into(),
    })?;
    let mut bits = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or(Error::Parse {
            pos: 0,
            msg: format!("row {} is not an array", i + 1),
        })?;
        let mut r = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            match v.as_u64() {
                Some(0) => r.push(0u8),
                Some(1) => r.push(1u8),
                _ => {
                    return Err(Error::BadEntry {
                        row: i + 1,
                        col: j + 1,
                        found: v.to_string(),
                    })
                }
            }
        }
        bits.push(r);
    }
    ColoringMatrix::from_rows(&bits)
}

impl FromStr for ColoringMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

impl fmt::Display for ColoringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m {
            if i > 1 {
                f.write_str(";")?;
            }
            for j in 1..=self.m {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ColoringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoringMatrix({self})")
    }
}

impl Serialize for ColoringMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ColoringMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_matrix(&s).map_err(serde::de::Error::custom)
    }
}

/// A bijection on `{1..m}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColorPermutation {
    // images[i] = p(i + 1) - 1
    images: Vec<usize>,
}

impl ColorPermutation {
    pub fn identity(m: usize) -> Self {
        ColorPermutation {
            images: (0..m).collect(),
        }
    }

    /// `images[k]` is the image of color `k + 1`, 1-based.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &p in images {
            if p == 0 || p > m || seen[p - 1] {
                return Err(Error::NotAPermutation(m));
            }
            seen[p - 1] = true;
            out.push(p - 1);
        }
        Ok(ColorPermutation { images: out })
    }

    pub fn swap(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, color: usize) -> usize {
        self.images[color - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        ColorPermutation { images: inv }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        ColorPermutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// All permutations of `{1..m}` in lexicographic order of image lists.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            out.push(ColorPermutation {
                images: cur.clone(),
            });
            // next permutation
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Returns `B` with `b_{p(i),p(j)} = a_{ij}`.
pub fn apply_permutation(a: &ColoringMatrix, p: &ColorPermutation) -> Result<ColoringMatrix> {
    if a.size() != p.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: p.size(),
        });
    }
    let m = a.size();
    let mut b = ColoringMatrix::zeros(m);
    for i in 1..=m {
        for j in 1..=m {
            if a.get(i, j) {
                b.set(p.apply(i), p.apply(j), true);
            }
        }
    }
    Ok(b)
}

/// Precomputed row relabelings for fast canonical forms at small `m`.
pub struct Canonizer {
    m: usize,
    perms: Vec<ColorPermutation>,
    // row_maps[k][r] is row mask r with columns relabeled by perms[k]
    row_maps: Vec<Vec<u64>>,
    // inverse image of each row position, per permutation
    sources: Vec<Vec<usize>>,
}

impl Canonizer {
    pub fn new(m: usize) -> Self {
        assert!(m <= 8, "canonizer tables support m <= 8");
        let perms = ColorPermutation::all(m);
        let row_maps = perms
            .iter()
            .map(|p| {
                (0..1u64 << m)
                    .map(|r| {
                        let mut out = 0u64;
                        for j in 0..m {
                            if r >> (m - 1 - j) & 1 == 1 {
                                out |= 1 << (m - 1 - p.images[j]);
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let sources = perms.iter().map(|p| p.inverse().images).collect();
        Canonizer {
            m,
            perms,
            row_maps,
            sources,
        }
    }

    /// Least code over all relabelings, plus the index of the first
    /// permutation achieving it.
    pub fn canonical_code(&self, a: &ColoringMatrix) -> (u64, usize) {
        debug_assert_eq!(a.size(), self.m);
        let rows = a.raw_rows();
        let mut best_rows = vec![u64::MAX; self.m];
        let mut best = 0usize;
        let mut cand = vec![0u64; self.m];
        for (k, (map, src)) in self.row_maps.iter().zip(&self.sources).enumerate() {
            let mut ord = std::cmp::Ordering::Equal;
            for pos in 0..self.m {
                let r = map[rows[src[pos]] as usize];
                cand[pos] = r;
                if ord == std::cmp::Ordering::Equal {
                    ord = r.cmp(&best_rows[pos]);
                    if ord == std::cmp::Ordering::Greater {
                        break;
                    }
                }
            }
            if ord == std::cmp::Ordering::Less {
                best_rows.copy_from_slice(&cand);
                best = k;
            }
        }
        let code = best_rows.iter().fold(0u64, |acc, &r| (acc << self.m) | r);
        (code, best)
    }

    pub fn permutation(&self, index: usize) -> &ColorPermutation {
        &self.perms[index]
    }
}

/// Lexicographically least row-major flattening over all simultaneous
/// row/column relabelings, with a permutation achieving it.
pub fn canonical_form(a: &ColoringMatrix) -> (ColoringMatrix, ColorPermutation) {
    let m = a.size();
    if m <= 8 {
        let c = Canonizer::new(m);
        let (code, k) = c.canonical_code(a);
        return (ColoringMatrix::from_code(m, code), c.perms[k].clone());
    }
    let mut best: Option<(ColoringMatrix, ColorPermutation)> = None;
    for p in ColorPermutation::all(m) {
        let b = apply_permutation(a, &p).expect("sizes agree");
        if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
            best = Some((b, p));
        }
    }
    best.expect("at least one permutation")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NecessaryInvariants {
    pub ones_total: usize,
    pub ones_per_row: Vec<usize>,
    pub three_vertex_sum: u64,
}

pub fn necessary_invariants(a: &ColoringMatrix) -> NecessaryInvariants {
    let ai = a.to_int();
    let at = a.transpose().to_int();
    let ata = ColoringMatrix::int_product(&at, &ai);
    let aa = ColoringMatrix::int_product(&ai, &ai);
    let three_vertex_sum = ata
        .iter()
        .chain(aa.iter())
        .flat_map(|r| r.iter())
        .sum();
    NecessaryInvariants {
        ones_total: a.ones_count(),
        ones_per_row: (1..=a.size()).map(|i| a.row_ones(i)).collect(),
        three_vertex_sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ColoringMatrix {
        parse_matrix(s).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let a = m("11;10");
        assert_eq!(a.to_rows(), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(a.to_string(), "11;10");
        assert_eq!(m("000;101;100").to_string(), "000;101;100");
        assert_eq!(m("[[1,0],[0,1]]"), ColoringMatrix::identity(2));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_matrix("11;1"),
            Err(Error::RaggedRow {
                row: 2,
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_matrix("10;2x"),
            Err(Error::BadEntry { row: 2, col: 1, .. })
        ));
        assert_eq!(parse_matrix("  "), Err(Error::EmptyMatrix));
    }

    #[test]
    fn permutation_examples() {
        let swap = ColorPermutation::swap(2, 1, 2);
        assert_eq!(apply_permutation(&m("10;10"), &swap).unwrap(), m("01;01"));
        let id = ColorPermutation::identity(2);
        assert_eq!(apply_permutation(&m("11;10"), &id).unwrap(), m("11;10"));
        assert_eq!(apply_permutation(&m("01;10"), &swap).unwrap(), m("01;10"));
        assert!(apply_permutation(&m("1"), &swap).is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&m("10;10")).0, m("01;01"));
        assert_eq!(canonical_form(&m("11;10")).0, m("01;11"));
        let id3 = ColoringMatrix::identity(3);
        assert_eq!(canonical_form(&id3).0, id3);
    }

    #[test]
    fn canonical_permutation_reproduces_form() {
        for code in 0..512u64 {
            let a = ColoringMatrix::from_code(3, code);
            let (c, p) = canonical_form(&a);
            assert_eq!(apply_permutation(&a, &p).unwrap(), c);
        }
    }

    #[test]
    fn invariant_examples() {
        let inv = necessary_invariants(&m("11;10"));
        assert_eq!((inv.ones_total, inv.three_vertex_sum), (3, 10));
        let inv = necessary_invariants(&ColoringMatrix::zeros(3));
        assert_eq!((inv.ones_total, inv.three_vertex_sum), (0, 0));
        let inv = necessary_invariants(&ColoringMatrix::ones(2));
        assert_eq!((inv.ones_total, inv.three_vertex_sum), (4, 16));
    }

    #[test]
    fn all_permutations_count() {
        assert_eq!(ColorPermutation::all(4).len(), 24);
        assert_eq!(ColorPermutation::all(1).len(), 1);
    }
}
