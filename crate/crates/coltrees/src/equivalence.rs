//! Finite-depth equivalence tests and the row rewrite moves that preserve
//! per-color counts.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::counting::{count_by_root, SequenceTable};
use crate::error::{Error, Result};
use crate::matrix::{necessary_invariants, ColoringMatrix};

/// Default comparison depth.
pub const DEFAULT_EQUIVALENCE_DEPTH: usize = 16;
/// Default bound on `|I| = |J|` for rewrite moves.
pub const DEFAULT_MOVE_SIZE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquivalenceKind {
    TreeColoring,
    Strict,
    Strong,
}

/// Cheap invariant that separated two matrices before any counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvariantFilter {
    OnesTotal,
    ThreeVertexSum,
    OnesPerRow,
    RowOnesMultiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    EqualToDepth,
    /// Least `n` where the compared sequences differ.
    DistinguishedAt(usize),
    FilteredByInvariant(InvariantFilter),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub kind: EquivalenceKind,
    pub depth: usize,
    pub verdict: Verdict,
}

impl EquivalenceVerdict {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::EqualToDepth
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::EqualToDepth => write!(f, "{:?}: equal to depth {}", self.kind, self.depth),
            Verdict::DistinguishedAt(n) => write!(f, "{:?}: distinguished at n = {n}", self.kind),
            Verdict::FilteredByInvariant(i) => write!(f, "{:?}: separated by {i:?}", self.kind),
        }
    }
}

fn same_size(a: &ColoringMatrix, b: &ColoringMatrix) -> Result<()> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    Ok(())
}

fn first_difference(depth: usize, differs: impl Fn(usize) -> bool) -> Verdict {
    (1..=depth)
        .find(|&n| differs(n))
        .map_or(Verdict::EqualToDepth, Verdict::DistinguishedAt)
}

/// Equal per-root-color sequences for every color, to `depth`.
pub fn strictly_equivalent(a: &ColoringMatrix, b: &ColoringMatrix, depth: usize) -> Result<EquivalenceVerdict> {
    same_size(a, b)?;
    let kind = EquivalenceKind::Strict;
    if necessary_invariants(a).ones_per_row != necessary_invariants(b).ones_per_row {
        return Ok(EquivalenceVerdict {
            kind,
            depth,
            verdict: Verdict::FilteredByInvariant(InvariantFilter::OnesPerRow),
        });
    }
    let (ta, tb) = (count_by_root(a, depth)?, count_by_root(b, depth)?);
    let verdict = first_difference(depth, |n| {
        (1..=a.size()).any(|i| ta.color(i)[n - 1] != tb.color(i)[n - 1])
    });
    Ok(EquivalenceVerdict { kind, depth, verdict })
}

fn sorted_prefixes(t: &SequenceTable, n: usize) -> Vec<&[BigUint]> {
    let mut v: Vec<&[BigUint]> = t.per_color.iter().map(|r| &r[..n]).collect();
    v.sort();
    v
}

/// Equal multisets of per-root-color sequences, to `depth`.
pub fn strongly_equivalent(a: &ColoringMatrix, b: &ColoringMatrix, depth: usize) -> Result<EquivalenceVerdict> {
    same_size(a, b)?;
    let kind = EquivalenceKind::Strong;
    let mut ra = necessary_invariants(a).ones_per_row;
    let mut rb = necessary_invariants(b).ones_per_row;
    ra.sort_unstable();
    rb.sort_unstable();
    if ra != rb {
        return Ok(EquivalenceVerdict {
            kind,
            depth,
            verdict: Verdict::FilteredByInvariant(InvariantFilter::RowOnesMultiset),
        });
    }
    let (ta, tb) = (count_by_root(a, depth)?, count_by_root(b, depth)?);
    let verdict = first_difference(depth, |n| sorted_prefixes(&ta, n) != sorted_prefixes(&tb, n));
    Ok(EquivalenceVerdict { kind, depth, verdict })
}

/// Equal total sequences, to `depth`.
pub fn tree_coloring_equivalent(a: &ColoringMatrix, b: &ColoringMatrix, depth: usize) -> Result<EquivalenceVerdict> {
    same_size(a, b)?;
    let kind = EquivalenceKind::TreeColoring;
    let (ia, ib) = (necessary_invariants(a), necessary_invariants(b));
    let filter = if ia.ones_total != ib.ones_total {
        Some(InvariantFilter::OnesTotal)
    } else if ia.three_vertex_sum != ib.three_vertex_sum {
        Some(InvariantFilter::ThreeVertexSum)
    } else {
        None
    };
    if let Some(f) = filter {
        return Ok(EquivalenceVerdict {
            kind,
            depth,
            verdict: Verdict::FilteredByInvariant(f),
        });
    }
    let (ta, tb) = (count_by_root(a, depth)?, count_by_root(b, depth)?);
    let verdict = first_difference(depth, |n| ta.total[n - 1] != tb.total[n - 1]);
    Ok(EquivalenceVerdict { kind, depth, verdict })
}

/// In row `row`, turn the zeros at `set_i` into ones and the ones at `set_j`
/// into zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RewriteMove {
    pub row: usize,
    pub set_i: Vec<usize>,
    pub set_j: Vec<usize>,
}

impl RewriteMove {
    pub fn new(row: usize, set_i: &[usize], set_j: &[usize]) -> Self {
        let mut i = set_i.to_vec();
        let mut j = set_j.to_vec();
        i.sort_unstable();
        j.sort_unstable();
        RewriteMove { row, set_i: i, set_j: j }
    }
}

impl fmt::Display for RewriteMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: I = {:?}, J = {:?}", self.row, self.set_i, self.set_j)
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            cur.push(items[idx]);
            rec(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn summed(t: &SequenceTable, colors: &[usize]) -> Vec<BigUint> {
    (0..t.depth)
        .map(|n| colors.iter().fold(BigUint::zero(), |acc, &c| acc + &t.color(c)[n]))
        .collect()
}

/// Every balanced move with `|I| = |J| <= max_size`, in order of row, size, `I`, `J`.
pub fn find_rewrites_bounded(a: &ColoringMatrix, depth: usize, max_size: usize) -> Result<Vec<RewriteMove>> {
    let t = count_by_root(a, depth)?;
    let m = a.size();
    let mut out = Vec::new();
    for row in 1..=m {
        let zeros: Vec<usize> = (1..=m).filter(|&c| !a.get(row, c)).collect();
        let ones: Vec<usize> = (1..=m).filter(|&c| a.get(row, c)).collect();
        for k in 1..=max_size.min(zeros.len()).min(ones.len()) {
            let js: Vec<(Vec<usize>, Vec<BigUint>)> =
                subsets(&ones, k).into_iter().map(|j| { let s = summed(&t, &j); (j, s) }).collect();
            for i in subsets(&zeros, k) {
                let si = summed(&t, &i);
                for (j, sj) in &js {
                    if si == *sj {
                        out.push(RewriteMove::new(row, &i, j));
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn find_rewrites(a: &ColoringMatrix, depth: usize) -> Result<Vec<RewriteMove>> {
    find_rewrites_bounded(a, depth, DEFAULT_MOVE_SIZE)
}

/// Applies a move after checking its shape against `a`.
pub fn apply_rewrite(a: &ColoringMatrix, mv: &RewriteMove) -> Result<ColoringMatrix> {
    let m = a.size();
    let bad = |msg: String| Err(Error::InvalidMove(msg));
    if !(1..=m).contains(&mv.row) {
        return bad(format!("row {} out of range", mv.row));
    }
    if mv.set_i.is_empty() {
        return bad("empty move".into());
    }
    if mv.set_i.len() != mv.set_j.len() {
        return bad("|I| != |J|".into());
    }
    let mut seen = vec![false; m + 1];
    for &c in mv.set_i.iter().chain(&mv.set_j) {
        if !(1..=m).contains(&c) || seen[c] {
            return bad(format!("color {c} out of range or repeated"));
        }
        seen[c] = true;
    }
    if let Some(&c) = mv.set_i.iter().find(|&&c| a.get(mv.row, c)) {
        return bad(format!("entry ({}, {c}) is already 1", mv.row));
    }
    if let Some(&c) = mv.set_j.iter().find(|&&c| !a.get(mv.row, c)) {
        return bad(format!("entry ({}, {c}) is already 0", mv.row));
    }
    let mut b = a.clone();
    for &c in &mv.set_i {
        b.set(mv.row, c, true);
    }
    for &c in &mv.set_j {
        b.set(mv.row, c, false);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(s: &str) -> ColoringMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn verdict_examples() {
        let v = strictly_equivalent(&mat("10;00"), &mat("01;00"), 8).unwrap();
        assert_eq!(v.verdict, Verdict::DistinguishedAt(3));
        let v = tree_coloring_equivalent(&mat("11;10"), &mat("11;01"), 8).unwrap();
        assert_eq!(v.verdict, Verdict::FilteredByInvariant(InvariantFilter::ThreeVertexSum));
        assert!(strongly_equivalent(&mat("10;10"), &mat("01;10"), 10).unwrap().is_equal());
        assert!(strictly_equivalent(&mat("111;010;001"), &mat("11;10"), 4).is_err());
    }

    #[test]
    fn interchangeable_pair_moves() {
        let a = mat("111;010;001");
        let moves = find_rewrites(&a, 12).unwrap();
        assert_eq!(
            moves,
            vec![RewriteMove::new(2, &[3], &[2]), RewriteMove::new(3, &[2], &[3])]
        );
        let b = apply_rewrite(&a, &RewriteMove::new(3, &[2], &[3])).unwrap();
        assert_eq!(b, mat("111;010;010"));
        assert!(apply_rewrite(&a, &RewriteMove::new(1, &[], &[])).is_err());
        assert!(apply_rewrite(&a, &RewriteMove::new(1, &[2], &[3])).is_err());
    }

    #[test]
    fn identity_moves() {
        let moves = find_rewrites(&ColoringMatrix::identity(2), 10).unwrap();
        assert_eq!(
            moves,
            vec![RewriteMove::new(1, &[2], &[1]), RewriteMove::new(2, &[1], &[2])]
        );
    }
}
