//! Exact counts of colored plane trees, by the root-color recurrence and by
//! literal enumeration.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ColoringMatrix;
use crate::tree::{enumerate_plane_trees, ColoredTree, PlaneTree};

/// Default truncation depth for counting.
pub const DEFAULT_DEPTH: usize = 20;

/// Largest `C_{n-1} * m^n` the brute-force routines will visit.
pub const BRUTE_FORCE_WORK_LIMIT: u128 = 50_000_000;

/// Per-root-color counts `t^(i)(n)` and totals `t(n)` for `n = 1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub m: usize,
    pub depth: usize,
    /// `per_color[i-1][n-1] = t^(i)(n)`.
    pub per_color: Vec<Vec<BigUint>>,
    /// `total[n-1] = t(n)`.
    pub total: Vec<BigUint>,
}

impl SequenceTable {
    /// Row for root color `i` (1-based).
    pub fn color(&self, i: usize) -> &[BigUint] {
        &self.per_color[i - 1]
    }

    pub fn total(&self) -> &[BigUint] {
        &self.total
    }

    /// `t^(i)(n)` with `t^(i)(0) = 0`.
    pub fn get(&self, i: usize, n: usize) -> BigUint {
        if n == 0 {
            BigUint::zero()
        } else {
            self.per_color[i - 1][n - 1].clone()
        }
    }

    /// Keeps only `n <= depth`.
    pub fn truncate(&self, depth: usize) -> SequenceTable {
        let d = depth.min(self.depth);
        SequenceTable {
            m: self.m,
            depth: d,
            per_color: self.per_color.iter().map(|r| r[..d].to_vec()).collect(),
            total: self.total[..d].to_vec(),
        }
    }
}

/// `t^(i)(1) = 1` and `t^(i)(n) = sum_k t^(i)(k) * sum_j a_ij t^(j)(n-k)`.
pub fn count_by_root(a: &ColoringMatrix, depth: usize) -> Result<SequenceTable> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let m = a.size();
    let succ: Vec<Vec<usize>> = (1..=m).map(|i| a.successors(i)).collect();
    // t[i][n] and s[i][n] with index n in 0..=depth; index 0 is unused zero.
    let mut t = vec![vec![BigUint::zero(); depth + 1]; m];
    let mut s = vec![vec![BigUint::zero(); depth + 1]; m];
    for n in 1..=depth {
        for i in 0..m {
            t[i][n] = if n == 1 {
                BigUint::one()
            } else {
                let mut acc = BigUint::zero();
                for k in 1..n {
                    if !t[i][k].is_zero() && !s[i][n - k].is_zero() {
                        acc += &t[i][k] * &s[i][n - k];
                    }
                }
                acc
            };
        }
        for i in 0..m {
            let mut acc = BigUint::zero();
            for &j in &succ[i] {
                acc += &t[j - 1][n];
            }
            s[i][n] = acc;
        }
    }
    let per_color: Vec<Vec<BigUint>> = t.into_iter().map(|mut r| r.split_off(1)).collect();
    let total = (0..depth)
        .map(|k| per_color.iter().map(|r| &r[k]).sum())
        .collect();
    Ok(SequenceTable {
        m,
        depth,
        per_color,
        total,
    })
}

pub fn count_total(a: &ColoringMatrix, depth: usize) -> Result<Vec<BigUint>> {
    Ok(count_by_root(a, depth)?.total)
}

fn catalan_u128(k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn check_work(m: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "tree size",
            detail: "n must be at least 1".into(),
        });
    }
    let colorings = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let work = catalan_u128(n - 1).saturating_mul(colorings);
    if n > crate::tree::MAX_TREE_SIZE || work > BRUTE_FORCE_WORK_LIMIT {
        return Err(Error::OutOfRange {
            what: "brute-force size",
            detail: format!("{m} colors on {n} vertices exceeds the work limit"),
        });
    }
    Ok(())
}

/// Visits every coloring of `tree` in lexicographic order of the preorder
/// color list and calls `f` on those valid for `a`.
fn for_each_valid_coloring(
    a: &ColoringMatrix,
    tree: &PlaneTree,
    mut f: impl FnMut(&[usize]),
) {
    let m = a.size();
    let parents = tree.parents();
    let n = parents.len();
    let mut colors = vec![1usize; n];
    loop {
        let ok = parents
            .iter()
            .enumerate()
            .all(|(v, p)| p.is_none_or(|p| a.get(colors[p], colors[v])));
        if ok {
            f(&colors);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if colors[k] < m {
                colors[k] += 1;
                break;
            }
            colors[k] = 1;
        }
    }
}

/// Every valid `a`-colored tree on `n` vertices, ordered by shape then coloring.
pub fn enumerate_colored_trees(a: &ColoringMatrix, n: usize) -> Result<Vec<ColoredTree>> {
    check_work(a.size(), n)?;
    let mut out = Vec::new();
    for shape in enumerate_plane_trees(n)? {
        for_each_valid_coloring(a, &shape, |c| {
            out.push(ColoredTree {
                shape: shape.clone(),
                colors: c.to_vec(),
            })
        });
    }
    Ok(out)
}

/// Number of valid colored trees on `n` vertices by root color (index `i-1`).
pub fn brute_force_counts(a: &ColoringMatrix, n: usize) -> Result<Vec<u64>> {
    check_work(a.size(), n)?;
    let mut counts = vec![0u64; a.size()];
    for shape in enumerate_plane_trees(n)? {
        for_each_valid_coloring(a, &shape, |c| counts[c[0] - 1] += 1);
    }
    Ok(counts)
}
