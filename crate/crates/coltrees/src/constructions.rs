//! Block-matrix constructions and the matrix families with known counts.
//!
//! Every construction keeps the base matrix in the leading block; adjoined
//! colors take the highest indices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::analysis::{Prediction, SeriesSelector};
use crate::counting::count_by_root;
use crate::error::{Error, Result};
use crate::matrix::ColoringMatrix;
use crate::series::TruncatedSeries;

/// Rectangular zero-one block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitBlock {
    pub rows: usize,
    pub cols: usize,
    bits: Vec<Vec<bool>>,
}

impl BitBlock {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        BitBlock {
            rows,
            cols,
            bits: (1..=rows).map(|i| (1..=cols).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| false)
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i - 1][j - 1]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.bits[i - 1].iter().filter(|&&b| b).count()
    }
}

impl FromStr for BitBlock {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').map(str::trim).collect();
        if s.trim().is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let cols = rows[0].len();
        let mut bits = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: cols,
                    found: r.len(),
                });
            }
            let row = r
                .chars()
                .enumerate()
                .map(|(j, c)| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::BadEntry {
                        row: i + 1,
                        col: j + 1,
                        found: c.to_string(),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            bits.push(row);
        }
        Ok(BitBlock {
            rows: rows.len(),
            cols,
            bits,
        })
    }
}

impl fmt::Display for BitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .bits
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl fmt::Debug for BitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitBlock({self})")
    }
}

/// A block construction on top of a base matrix `a` (size `m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSpec {
    /// `diag(A_1, ..., A_k)`.
    Diagonal(Vec<ColoringMatrix>),
    /// Every bit becomes a constant `k x k` block.
    Blowup { a: ColoringMatrix, k: usize },
    /// `[A 0; B C]` with `B` of size `m' x m` and `C` of size `m' x m'`.
    LowerBlock { a: ColoringMatrix, b: BitBlock, c: ColoringMatrix },
    /// `[A 0; B 0]` with `B` of size `m' x m`.
    RootOnlySingle { a: ColoringMatrix, b: BitBlock },
    /// `[A 0; 1 0]` with `m'` added colors.
    RootOnly { a: ColoringMatrix, extra: usize },
    /// `[A 0; 1 1]`.
    UpSet { a: ColoringMatrix, extra: usize },
    /// `[A 0; 1 I]`.
    SeparateUpSets { a: ColoringMatrix, extra: usize },
    /// `[A B; 0 0]` with `B` of size `m x m'`.
    ZeroRows { a: ColoringMatrix, b: BitBlock },
    /// `[A B; 0 I]`.
    CatRows { a: ColoringMatrix, b: BitBlock },
    /// `[A 0; 0 0]`.
    Unusable { a: ColoringMatrix, extra: usize },
    /// `a = [A1 A2; 0 0]` whose last `b.cols` colors have zero rows;
    /// adds `b.rows` colors whose rows are `[0 B 0]`.
    Singleton { a: ColoringMatrix, b: BitBlock },
}

/// A composed matrix with the sequence relations it is predicted to satisfy.
#[derive(Clone, Debug)]
pub struct Construction {
    pub matrix: ColoringMatrix,
    pub predictions: Vec<Prediction>,
}

fn mismatch(msg: String) -> Error {
    Error::TemplateMismatch(msg)
}

fn need_extra(extra: usize) -> Result<()> {
    if extra == 0 {
        return Err(mismatch("at least one color must be adjoined".into()));
    }
    Ok(())
}

/// Assembles `[TL TR; BL BR]` from closures over 1-based indices.
fn block2(
    m: usize,
    extra: usize,
    tl: impl Fn(usize, usize) -> bool,
    tr: impl Fn(usize, usize) -> bool,
    bl: impl Fn(usize, usize) -> bool,
    br: impl Fn(usize, usize) -> bool,
) -> Result<ColoringMatrix> {
    let n = m + extra;
    if n > crate::matrix::MAX_COLORS {
        return Err(Error::OutOfRange {
            what: "matrix size",
            detail: format!("{n} colors"),
        });
    }
    Ok(ColoringMatrix::from_fn(n, |i, j| match (i <= m, j <= m) {
        (true, true) => tl(i, j),
        (true, false) => tr(i, j - m),
        (false, true) => bl(i - m, j),
        (false, false) => br(i - m, j - m),
    }))
}

pub fn block_diagonal(parts: &[ColoringMatrix]) -> Result<ColoringMatrix> {
    if parts.is_empty() {
        return Err(mismatch("no blocks".into()));
    }
    let sizes: Vec<usize> = parts.iter().map(ColoringMatrix::size).collect();
    let n: usize = sizes.iter().sum();
    if n > crate::matrix::MAX_COLORS {
        return Err(Error::OutOfRange {
            what: "matrix size",
            detail: format!("{n} colors"),
        });
    }
    let mut owner = Vec::with_capacity(n);
    for (k, &s) in sizes.iter().enumerate() {
        let start = owner.len();
        owner.extend((0..s).map(|d| (k, start, d)));
    }
    Ok(ColoringMatrix::from_fn(n, |i, j| {
        let (bi, si, _) = owner[i - 1];
        let (bj, _, _) = owner[j - 1];
        bi == bj && parts[bi].get(i - si, j - si)
    }))
}

pub fn blowup(a: &ColoringMatrix, k: usize) -> Result<ColoringMatrix> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "blowup factor",
            detail: "k must be at least 1".into(),
        });
    }
    let n = a.size() * k;
    if n > crate::matrix::MAX_COLORS {
        return Err(Error::OutOfRange {
            what: "matrix size",
            detail: format!("{n} colors"),
        });
    }
    Ok(ColoringMatrix::from_fn(n, |i, j| a.get((i - 1) / k + 1, (j - 1) / k + 1)))
}

fn base_series(a: &ColoringMatrix, order: usize) -> Result<(Vec<TruncatedSeries>, TruncatedSeries)> {
    let t = count_by_root(a, order)?;
    let per: Vec<TruncatedSeries> = t
        .per_color
        .iter()
        .map(|r| TruncatedSeries::from_counts(r, order))
        .collect();
    let total = TruncatedSeries::from_counts(&t.total, order);
    Ok((per, total))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn keeps_base_colors(per: &[TruncatedSeries], what: &str) -> Vec<Prediction> {
    per.iter()
        .enumerate()
        .map(|(i, s)| {
            Prediction::equals(
                SeriesSelector::Color(i + 1),
                s.clone(),
                format!("{what}: base color {} unchanged", i + 1),
            )
        })
        .collect()
}

/// Builds the matrix for `spec` and its predicted relations through `order`.
pub fn adjoin(spec: &BlockSpec, order: usize) -> Result<Construction> {
    if order == 0 {
        return Err(Error::ZeroDepth);
    }
    let x = TruncatedSeries::x(order);
    let one = TruncatedSeries::one(order);
    match spec {
        BlockSpec::Diagonal(parts) => {
            let matrix = block_diagonal(parts)?;
            let mut total = TruncatedSeries::zero(order);
            for p in parts {
                total = &total + &base_series(p, order)?.1;
            }
            Ok(Construction {
                matrix,
                predictions: vec![Prediction::equals(SeriesSelector::Total, total, "diagonal: totals add")],
            })
        }
        BlockSpec::Blowup { a, k } => {
            let matrix = blowup(a, *k)?;
            let (per, total) = base_series(a, order)?;
            let kk = rat(*k as i64);
            let mut scaled = TruncatedSeries::zero(order);
            let mut pw = BigRational::one();
            for n in 0..=order {
                scaled.set_coeff(n, total.coeff(n) * &pw);
                pw *= &kk;
            }
            let mut predictions = vec![Prediction::equals(SeriesSelector::Total, scaled, "blowup: k^n t(n)")];
            for (i, s) in per.iter().enumerate() {
                let mut c = TruncatedSeries::zero(order);
                let mut pw = BigRational::one();
                for n in 1..=order {
                    c.set_coeff(n, s.coeff(n) * &pw);
                    pw *= &kk;
                }
                for copy in 0..*k {
                    predictions.push(Prediction::equals(
                        SeriesSelector::Color(i * k + copy + 1),
                        c.clone(),
                        "blowup: k^(n-1) t^(i)(n)",
                    ));
                }
            }
            Ok(Construction { matrix, predictions })
        }
        BlockSpec::LowerBlock { a, b, c } => {
            let m = a.size();
            if b.cols != m || b.rows != c.size() {
                return Err(mismatch(format!("B is {}x{}, expected {}x{m}", b.rows, b.cols, c.size())));
            }
            let matrix = block2(m, c.size(), |i, j| a.get(i, j), |_, _| false, |i, j| b.get(i, j), |i, j| c.get(i, j))?;
            let (per, _) = base_series(a, order)?;
            Ok(Construction {
                matrix,
                predictions: keeps_base_colors(&per, "lower block"),
            })
        }
        BlockSpec::RootOnlySingle { a, b } => {
            let m = a.size();
            if b.cols != m || b.rows == 0 {
                return Err(mismatch(format!("B is {}x{}, expected m'x{m}", b.rows, b.cols)));
            }
            let matrix = block2(m, b.rows, |i, j| a.get(i, j), |_, _| false, |i, j| b.get(i, j), |_, _| false)?;
            let (per, _) = base_series(a, order)?;
            let mut predictions = keeps_base_colors(&per, "root-only single");
            for r in 1..=b.rows {
                let mut s = TruncatedSeries::zero(order);
                for j in 1..=m {
                    if b.get(r, j) {
                        s = &s + &per[j - 1];
                    }
                }
                let f = x.div(&(&one - &s)).expect("unit constant term");
                predictions.push(Prediction::equals(
                    SeriesSelector::Color(m + r),
                    f,
                    "root-only single: x / (1 - sum_j b_j F_j)",
                ));
            }
            Ok(Construction { matrix, predictions })
        }
        BlockSpec::RootOnly { a, extra } => {
            need_extra(*extra)?;
            let m = a.size();
            let matrix = block2(m, *extra, |i, j| a.get(i, j), |_, _| false, |_, _| true, |_, _| false)?;
            let (_, f) = base_series(a, order)?;
            let mx = x.scale(&rat(*extra as i64));
            let g = &f + &mx.div(&(&one - &f)).expect("unit constant term");
            Ok(Construction {
                matrix,
                predictions: vec![Prediction::equals(SeriesSelector::Total, g, "root-only: F + m'x/(1-F)")],
            })
        }
        BlockSpec::UpSet { a, extra } => {
            need_extra(*extra)?;
            let m = a.size();
            let matrix = block2(m, *extra, |i, j| a.get(i, j), |_, _| false, |_, _| true, |_, _| true)?;
            let (_, f) = base_series(a, order)?;
            let mx = x.scale(&rat(*extra as i64));
            Ok(Construction {
                matrix,
                predictions: vec![Prediction {
                    target: SeriesSelector::Total,
                    coeffs: vec![&f + &mx, -&(&one + &f), one.clone()],
                    description: "up-set: G^2 - (1+F)G + F + m'x = 0".into(),
                }],
            })
        }
        BlockSpec::SeparateUpSets { a, extra } => {
            need_extra(*extra)?;
            let m = a.size();
            let e = *extra as i64;
            let matrix = block2(m, *extra, |i, j| a.get(i, j), |_, _| false, |_, _| true, |i, j| i == j)?;
            let (_, f) = base_series(a, order)?;
            let inv = BigRational::new(BigInt::one(), BigInt::from(e));
            let c2 = one.scale(&inv);
            let c1 = &f.scale(&(rat(e - 2) * &inv)) - &one;
            let c0 = &(&f - &(&f * &f).scale(&(rat(e - 1) * &inv))) + &x.scale(&rat(e));
            Ok(Construction {
                matrix,
                predictions: vec![Prediction {
                    target: SeriesSelector::Total,
                    coeffs: vec![c0, c1, c2],
                    description: "separate up-sets: quadratic in G".into(),
                }],
            })
        }
        BlockSpec::ZeroRows { a, b } => {
            let m = a.size();
            if b.rows != m || b.cols == 0 {
                return Err(mismatch(format!("B is {}x{}, expected {m}xm'", b.rows, b.cols)));
            }
            let matrix = block2(m, b.cols, |i, j| a.get(i, j), |i, j| b.get(i, j), |_, _| false, |_, _| false)?;
            let predictions = (1..=b.cols)
                .map(|r| Prediction::equals(SeriesSelector::Color(m + r), x.clone(), "zero rows: F = x"))
                .collect();
            Ok(Construction { matrix, predictions })
        }
        BlockSpec::CatRows { a, b } => {
            let m = a.size();
            if b.rows != m || b.cols == 0 {
                return Err(mismatch(format!("B is {}x{}, expected {m}xm'", b.rows, b.cols)));
            }
            let matrix = block2(m, b.cols, |i, j| a.get(i, j), |i, j| b.get(i, j), |_, _| false, |i, j| i == j)?;
            // C_{n-1} from C_k = C(2k,k)/(k+1).
            let mut cat = TruncatedSeries::zero(order);
            let mut c = BigInt::one();
            for n in 1..=order {
                cat.set_coeff(n, BigRational::from_integer(c.clone()));
                let k = BigInt::from(n as u64 - 1);
                c = c * (BigInt::from(4u32) * &k + BigInt::from(2u32)) / (k + BigInt::from(2u32));
            }
            let predictions = (1..=b.cols)
                .map(|r| Prediction::equals(SeriesSelector::Color(m + r), cat.clone(), "cat rows: C_{n-1}"))
                .collect();
            Ok(Construction { matrix, predictions })
        }
        BlockSpec::Unusable { a, extra } => {
            need_extra(*extra)?;
            let m = a.size();
            let matrix = block2(m, *extra, |i, j| a.get(i, j), |_, _| false, |_, _| false, |_, _| false)?;
            let (_, f) = base_series(a, order)?;
            let g = &f + &x.scale(&rat(*extra as i64));
            Ok(Construction {
                matrix,
                predictions: vec![Prediction::equals(SeriesSelector::Total, g, "unusable: F + m'x")],
            })
        }
        BlockSpec::Singleton { a, b } => {
            let m = a.size();
            let m2 = b.cols;
            if m2 == 0 || m2 > m || b.rows == 0 {
                return Err(mismatch(format!("B is {}x{}", b.rows, b.cols)));
            }
            let m1 = m - m2;
            if (m1 + 1..=m).any(|i| a.row_ones(i) > 0) {
                return Err(mismatch(format!("the last {m2} rows of the base must be zero")));
            }
            let matrix = block2(
                m,
                b.rows,
                |i, j| a.get(i, j),
                |_, _| false,
                |i, j| j > m1 && b.get(i, j - m1),
                |_, _| false,
            )?;
            let (per, f) = base_series(a, order)?;
            let mut predictions = keeps_base_colors(&per, "singleton");
            let mut g = f.clone();
            for r in 1..=b.rows {
                let s = b.row_sum(r) as i64;
                let geo = x
                    .div(&(&one - &x.scale(&rat(s))))
                    .expect("unit constant term");
                g = &g + &geo;
                let mut pw = TruncatedSeries::zero(order);
                let mut v = BigInt::one();
                for n in 1..=order {
                    pw.set_coeff(n, BigRational::from_integer(v.clone()));
                    v *= s;
                }
                predictions.push(Prediction::equals(
                    SeriesSelector::Color(m + r),
                    pw,
                    "singleton: (row sum)^(n-1)",
                ));
            }
            predictions.push(Prediction::equals(
                SeriesSelector::Total,
                g,
                "singleton: F + x sum 1/(1 - x b_i)",
            ));
            Ok(Construction { matrix, predictions })
        }
    }
}

/// Parameterized matrix families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `l` rows of ones then `m` rows of zeros.
    Family1 { l: usize, m: usize },
    /// `[1 1; 1 0]` with an `l x l` block of ones and an `m x m` block of zeros.
    Family2 { l: usize, m: usize },
    /// The two sparse `m x m` templates (`m >= 4`).
    Family3 { m: usize },
    /// `m = 2l`: `i + j <= m + 1` except `i + j = m` with `i`, `j` odd.
    Family4 { m: usize },
    /// Ones strictly below the diagonal.
    Family5 { m: usize },
    /// Ones on and below the diagonal.
    Family6 { m: usize },
    /// `a_ij = 1` iff `i + j <= m + 1`.
    KPlane { m: usize },
}

fn range_err(detail: String) -> Error {
    Error::OutOfRange {
        what: "family parameter",
        detail,
    }
}

/// Matrices of a family. Family 3 yields the pair `(A, B)`; all others one matrix.
pub fn family_matrix(family: Family) -> Result<Vec<ColoringMatrix>> {
    let check = |n: usize| {
        if n == 0 || n > crate::matrix::MAX_COLORS {
            Err(range_err(format!("size {n}")))
        } else {
            Ok(())
        }
    };
    Ok(match family {
        Family::Family1 { l, m } => {
            if l == 0 || m == 0 {
                return Err(range_err("l and m must be positive".into()));
            }
            check(l + m)?;
            vec![ColoringMatrix::from_fn(l + m, |i, _| i <= l)]
        }
        Family::Family2 { l, m } => {
            if l == 0 || m == 0 {
                return Err(range_err("l and m must be positive".into()));
            }
            check(l + m)?;
            vec![ColoringMatrix::from_fn(l + m, |i, j| i <= l || j <= l)]
        }
        Family::Family3 { m } => {
            if m < 4 {
                return Err(range_err(format!("m = {m} < 4")));
            }
            check(m)?;
            let a = ColoringMatrix::from_fn(m, |i, j| (i >= 3 && j == 2) || (i == m && j == 1));
            let b = ColoringMatrix::from_fn(m, |i, j| ((i == 2 || i == 3) && j == m) || (i >= 4 && j == 1));
            vec![a, b]
        }
        Family::Family4 { m } => {
            if m == 0 || m % 2 != 0 {
                return Err(range_err(format!("m = {m} is not a positive even number")));
            }
            check(m)?;
            vec![ColoringMatrix::from_fn(m, |i, j| {
                i + j <= m + 1 && !(i + j == m && i % 2 == 1 && j % 2 == 1)
            })]
        }
        Family::Family5 { m } => {
            check(m)?;
            vec![ColoringMatrix::from_fn(m, |i, j| i > j)]
        }
        Family::Family6 { m } => {
            check(m)?;
            vec![ColoringMatrix::from_fn(m, |i, j| i >= j)]
        }
        Family::KPlane { m } => {
            check(m)?;
            vec![ColoringMatrix::from_fn(m, |i, j| i + j <= m + 1)]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::verify_prediction;

    fn check(c: &Construction, order: usize) {
        let t = count_by_root(&c.matrix, order).unwrap();
        for p in &c.predictions {
            assert!(verify_prediction(p, &t).unwrap().holds(), "{}", p.description);
        }
    }

    #[test]
    fn diagonal_and_blowup() {
        let one: ColoringMatrix = "1".parse().unwrap();
        assert_eq!(block_diagonal(&[one.clone(), one.clone()]).unwrap(), ColoringMatrix::identity(2));
        let d = block_diagonal(&[one.clone(), "11;00".parse().unwrap()]).unwrap();
        assert_eq!(d.to_string(), "100;011;000");
        assert_eq!(blowup(&one, 3).unwrap(), ColoringMatrix::ones(3));
        let a: ColoringMatrix = "11;10".parse().unwrap();
        assert_eq!(blowup(&a, 1).unwrap(), a);
        assert!(blowup(&a, 0).is_err());
        check(&adjoin(&BlockSpec::Blowup { a, k: 2 }, 10).unwrap(), 10);
    }

    #[test]
    fn templates() {
        let a: ColoringMatrix = "11;10".parse().unwrap();
        let c = adjoin(&BlockSpec::RootOnly { a: a.clone(), extra: 1 }, 12).unwrap();
        assert_eq!(c.matrix.to_string(), "110;100;110");
        check(&c, 12);
        let z = adjoin(&BlockSpec::ZeroRows { a: a.clone(), b: "10;01".parse().unwrap() }, 8).unwrap();
        assert_eq!(z.matrix.to_string(), "1110;1001;0000;0000");
        check(&z, 8);
        let s = adjoin(
            &BlockSpec::Singleton { a: "01;00".parse().unwrap(), b: "1".parse().unwrap() },
            8,
        )
        .unwrap();
        assert_eq!(s.matrix.to_string(), "010;000;010");
        check(&s, 8);
        assert!(adjoin(&BlockSpec::Singleton { a: a.clone(), b: "1".parse().unwrap() }, 8).is_err());
        assert!(adjoin(&BlockSpec::RootOnlySingle { a, b: "1".parse().unwrap() }, 8).is_err());
    }

    #[test]
    fn printed_family4_matrix() {
        let c = family_matrix(Family::Family4 { m: 6 }).unwrap();
        assert_eq!(c[0].to_string(), "111101;111110;110100;111000;010000;100000");
        assert_eq!(c[0].ones_count(), 18);
        assert_eq!(family_matrix(Family::Family5 { m: 2 }).unwrap()[0].to_string(), "00;10");
        assert!(family_matrix(Family::Family3 { m: 3 }).is_err());
        assert!(family_matrix(Family::Family4 { m: 5 }).is_err());
    }
}
