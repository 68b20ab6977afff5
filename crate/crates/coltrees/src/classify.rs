//! Exhaustive classification of all `m x m` coloring matrices into
//! isomorphism, strong-equivalence and tree-coloring classes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::counting::count_by_root;
use crate::error::{Error, Result};
use crate::matrix::{Canonizer, ColoringMatrix};

/// Bumped whenever the catalog layout or counting semantics change.
pub const CATALOG_VERSION: &str = "coltrees-catalog-1";
/// Largest `m` classified without an explicit opt-in.
pub const DEFAULT_MAX_M: usize = 4;
/// Hard upper bound; `2^(m^2)` codes must fit in a `u64`.
pub const ABSOLUTE_MAX_M: usize = 5;

/// Default depth for a given `m`.
pub fn default_depth(m: usize) -> usize {
    if m <= 3 {
        16
    } else {
        14
    }
}

/// Big integers written as decimal strings in JSON.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecimalSeq(pub Vec<BigUint>);

impl Serialize for DecimalSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|v| v.to_str_radix(10)))
    }
}

impl<'de> Deserialize<'de> for DecimalSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| {
                BigUint::parse_bytes(s.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DecimalSeq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub canonical: ColoringMatrix,
    /// Number of matrices isomorphic to `canonical`.
    pub orbit_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongClass {
    /// Per-color sequences, sorted.
    pub fingerprint: Vec<DecimalSeq>,
    pub iso_classes: Vec<IsoClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeClass {
    pub total: DecimalSeq,
    pub strong_classes: Vec<StrongClass>,
}

impl TreeClass {
    pub fn representative(&self) -> &ColoringMatrix {
        &self.strong_classes[0].iso_classes[0].canonical
    }

    pub fn iso_count(&self) -> usize {
        self.strong_classes.iter().map(|s| s.iso_classes.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogHeader {
    pub m: usize,
    pub depth: usize,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub iso_classes: usize,
    pub strong_classes: usize,
    pub tree_classes: usize,
    /// Tree classes holding at least two strong classes.
    pub split_tree_classes: usize,
    /// Tree classes holding at least three strong classes.
    pub triple_split_tree_classes: usize,
    /// Largest least-separating `n` over pairs of distinct tree classes.
    pub max_separating_n_tree: usize,
    /// Same for pairs of distinct strong classes.
    pub max_separating_n_strong: usize,
}

/// Classes are nested tree > strong > iso. Every level is ordered by its
/// least canonical matrix, so the serialized form is reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationCatalog {
    pub header: CatalogHeader,
    pub summary: CatalogSummary,
    pub tree_classes: Vec<TreeClass>,
}

impl ClassificationCatalog {
    pub fn iso_classes(&self) -> impl Iterator<Item = &IsoClass> {
        self.tree_classes
            .iter()
            .flat_map(|t| t.strong_classes.iter())
            .flat_map(|s| s.iso_classes.iter())
    }

    pub fn strong_classes(&self) -> impl Iterator<Item = &StrongClass> {
        self.tree_classes.iter().flat_map(|t| t.strong_classes.iter())
    }

    /// Tree classes that contain more than one strong class.
    pub fn split_classes(&self) -> impl Iterator<Item = &TreeClass> {
        self.tree_classes.iter().filter(|t| t.strong_classes.len() > 1)
    }

    /// The tree class containing `a` up to isomorphism.
    pub fn find(&self, a: &ColoringMatrix) -> Option<&TreeClass> {
        if a.size() != self.header.m {
            return None;
        }
        let canon = Canonizer::new(a.size());
        let code = canon.canonical_code(a).0;
        self.tree_classes.iter().find(|t| {
            t.strong_classes
                .iter()
                .any(|s| s.iso_classes.iter().any(|c| c.canonical.code() == code))
        })
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} iso, {} strong, {} tree",
            self.summary.iso_classes, self.summary.strong_classes, self.summary.tree_classes
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    /// Parses and then runs [`validate`](Self::validate).
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        c.validate()?;
        Ok(c)
    }

    /// Checks that the summary counts and matrix sizes agree with the body.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parse { pos: 0, msg });
        let s = &self.summary;
        let iso = self.iso_classes().count();
        let strong = self.strong_classes().count();
        let split = self.tree_classes.iter().filter(|t| t.strong_classes.len() >= 2).count();
        let triple = self.tree_classes.iter().filter(|t| t.strong_classes.len() >= 3).count();
        let body = (iso, strong, self.tree_classes.len(), split, triple);
        let head = (s.iso_classes, s.strong_classes, s.tree_classes, s.split_tree_classes, s.triple_split_tree_classes);
        if body != head {
            return bad(format!("summary {head:?} disagrees with body {body:?}"));
        }
        let m = self.header.m;
        let depth = self.header.depth;
        for t in &self.tree_classes {
            if t.total.0.len() != depth || t.strong_classes.is_empty() {
                return bad("malformed tree class".into());
            }
            for sc in &t.strong_classes {
                if sc.fingerprint.len() != m || sc.fingerprint.iter().any(|r| r.0.len() != depth) || sc.iso_classes.is_empty() {
                    return bad("malformed strong class".into());
                }
                if sc.iso_classes.iter().any(|c| c.canonical.size() != m) {
                    return bad(format!("matrix size differs from m = {m}"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub depth: usize,
    /// Permit `m = 5`, which enumerates 2^25 matrices.
    pub allow_m5: bool,
}

impl ClassifyOptions {
    pub fn for_m(m: usize) -> Self {
        ClassifyOptions {
            depth: default_depth(m),
            allow_m5: false,
        }
    }
}

/// Canonical codes of all isomorphism classes with their orbit sizes, ascending.
pub fn iso_representatives(m: usize) -> Vec<(u64, u64)> {
    let canon = Canonizer::new(m);
    let total: u64 = 1u64 << (m * m);
    let mut reps: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&code| canon.canonical_code(&ColoringMatrix::from_code(m, code)).0 == code)
        .collect();
    reps.sort_unstable();
    reps.into_par_iter()
        .map(|code| (code, orbit_size(&canon, m, code)))
        .collect()
}

fn orbit_size(canon: &Canonizer, m: usize, code: u64) -> u64 {
    let a = ColoringMatrix::from_code(m, code);
    let images: BTreeSet<u64> = (0..(1..=m).product::<usize>())
        .map(|k| {
            crate::matrix::apply_permutation(&a, canon.permutation(k))
                .expect("sizes agree")
                .code()
        })
        .collect();
    images.len() as u64
}

fn lcp<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Classifies every `m x m` matrix.
pub fn classify_all(m: usize, opts: ClassifyOptions) -> Result<ClassificationCatalog> {
    if m == 0 {
        return Err(Error::EmptyMatrix);
    }
    let limit = if opts.allow_m5 { ABSOLUTE_MAX_M } else { DEFAULT_MAX_M };
    if m > limit {
        return Err(Error::OutOfRange {
            what: "m",
            detail: format!("{m} exceeds the classification limit {limit}"),
        });
    }
    if opts.depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let reps = iso_representatives(m);
    let counted: Vec<(u64, u64, Vec<Vec<BigUint>>, Vec<BigUint>)> = reps
        .par_iter()
        .map(|&(code, orbit)| {
            let t = count_by_root(&ColoringMatrix::from_code(m, code), opts.depth).expect("depth > 0");
            let mut per = t.per_color;
            per.sort();
            (code, orbit, per, t.total)
        })
        .collect();

    // total -> fingerprint -> [(code, orbit)], codes ascending within each bucket
    let mut grouped: BTreeMap<Vec<BigUint>, BTreeMap<Vec<Vec<BigUint>>, Vec<(u64, u64)>>> = BTreeMap::new();
    for (code, orbit, per, total) in counted {
        grouped.entry(total).or_default().entry(per).or_default().push((code, orbit));
    }

    let mut strong_fps: Vec<Vec<Vec<BigUint>>> = Vec::new();
    let mut totals: Vec<Vec<BigUint>> = Vec::new();
    let mut tree_classes: Vec<(u64, TreeClass)> = Vec::new();
    for (total, strong) in grouped {
        let mut strong_classes: Vec<(u64, StrongClass)> = strong
            .into_iter()
            .map(|(fp, mut members)| {
                members.sort_unstable();
                strong_fps.push(fp.clone());
                let key = members[0].0;
                let iso_classes = members
                    .into_iter()
                    .map(|(code, orbit_size)| IsoClass {
                        canonical: ColoringMatrix::from_code(m, code),
                        orbit_size,
                    })
                    .collect();
                (
                    key,
                    StrongClass {
                        fingerprint: fp.into_iter().map(DecimalSeq).collect(),
                        iso_classes,
                    },
                )
            })
            .collect();
        strong_classes.sort_by_key(|(k, _)| *k);
        let key = strong_classes[0].0;
        totals.push(total.clone());
        tree_classes.push((
            key,
            TreeClass {
                total: DecimalSeq(total),
                strong_classes: strong_classes.into_iter().map(|(_, s)| s).collect(),
            },
        ));
    }
    tree_classes.sort_by_key(|(k, _)| *k);
    let tree_classes: Vec<TreeClass> = tree_classes.into_iter().map(|(_, t)| t).collect();

    // Lexicographic neighbors realize the longest common prefix.
    totals.sort();
    let max_sep_tree = totals.windows(2).map(|w| lcp(&w[0], &w[1]) + 1).max().unwrap_or(0);
    let flat: Vec<Vec<Vec<BigUint>>> = strong_fps;
    let max_sep_strong = max_strong_separation(&flat, opts.depth);

    let summary = CatalogSummary {
        iso_classes: reps.len(),
        strong_classes: tree_classes.iter().map(|t| t.strong_classes.len()).sum(),
        tree_classes: tree_classes.len(),
        split_tree_classes: tree_classes.iter().filter(|t| t.strong_classes.len() >= 2).count(),
        triple_split_tree_classes: tree_classes.iter().filter(|t| t.strong_classes.len() >= 3).count(),
        max_separating_n_tree: max_sep_tree,
        max_separating_n_strong: max_sep_strong,
    };
    Ok(ClassificationCatalog {
        header: CatalogHeader {
            m,
            depth: opts.depth,
            version: CATALOG_VERSION.to_string(),
        },
        summary,
        tree_classes,
    })
}

/// Largest least-separating `n` between distinct strong fingerprints.
///
/// Two fingerprints agree through `n` when their sorted multisets of length-`n`
/// prefixes coincide, so bucket by prefix multisets depth by depth.
fn max_strong_separation(fps: &[Vec<Vec<BigUint>>], depth: usize) -> usize {
    if fps.len() < 2 {
        return 0;
    }
    let mut best = 0;
    for n in 1..=depth {
        let mut seen: BTreeMap<Vec<&[BigUint]>, usize> = BTreeMap::new();
        for fp in fps {
            let mut key: Vec<&[BigUint]> = fp.iter().map(|r| &r[..n]).collect();
            key.sort();
            *seen.entry(key).or_default() += 1;
        }
        if seen.values().any(|&c| c > 1) {
            best = n + 1;
        } else {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_colors() {
        let c = classify_all(2, ClassifyOptions::for_m(2)).unwrap();
        assert_eq!(c.summary.iso_classes, 10);
        assert_eq!(c.summary.tree_classes, 8);
        assert_eq!(c.summary.strong_classes, 8);
        assert_eq!(c.iso_classes().map(|i| i.orbit_size).sum::<u64>(), 16);
        assert_eq!(c.summary_line(), "10 iso, 8 strong, 8 tree");
    }

    #[test]
    fn json_round_trip() {
        let c = classify_all(2, ClassifyOptions { depth: 6, allow_m5: false }).unwrap();
        let text = c.to_json();
        assert_eq!(ClassificationCatalog::from_json(&text).unwrap(), c);
        assert!(text.contains("\"42\""));
        let broken = text.replacen("\"tree_classes\": 8", "\"tree_classes\": 7", 1);
        assert!(ClassificationCatalog::from_json(&broken).is_err());
    }

    #[test]
    fn limits() {
        assert!(classify_all(5, ClassifyOptions::for_m(5)).is_err());
        assert!(classify_all(6, ClassifyOptions { depth: 4, allow_m5: true }).is_err());
    }
}
