//! Generating-function checks and recurrence guessing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::SequenceTable;
use crate::error::{Error, Result};
use crate::matrix::ColoringMatrix;
use crate::poly::{BivariatePolynomial, IntPoly};
use crate::series::TruncatedSeries;

/// Which row of a [`SequenceTable`] to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesSelector {
    Total,
    /// Root color, 1-based.
    Color(usize),
}

/// `sum_{n>=1} t(n) x^n` truncated at the table depth.
pub fn series_from_counts(table: &SequenceTable, which: SeriesSelector) -> Result<TruncatedSeries> {
    let row = match which {
        SeriesSelector::Total => table.total(),
        SeriesSelector::Color(i) if (1..=table.m).contains(&i) => table.color(i),
        SeriesSelector::Color(i) => {
            return Err(Error::OutOfRange {
                what: "color",
                detail: format!("{i} not in 1..={}", table.m),
            })
        }
    };
    Ok(TruncatedSeries::from_counts(row, table.depth))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationVerdict {
    /// Every coefficient through `order` vanishes.
    Annihilated { order: usize },
    /// Coefficient of `x^index` is `value`, the first nonzero one.
    FailsAt { index: usize, value: BigRational },
}

impl EquationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EquationVerdict::Annihilated { .. })
    }
}

fn verdict_of(residual: &TruncatedSeries) -> EquationVerdict {
    match residual.valuation() {
        None => EquationVerdict::Annihilated {
            order: residual.order(),
        },
        Some(index) => EquationVerdict::FailsAt {
            index,
            value: residual.coeff(index).clone(),
        },
    }
}

/// Evaluates `poly(series, x)` through the series order.
pub fn verify_functional_equation(poly: &BivariatePolynomial, series: &TruncatedSeries) -> EquationVerdict {
    verdict_of(&poly.evaluate(series))
}

/// Solves `F_i = x + F_i * sum_j a_ij F_j` by fixed-point iteration on
/// truncated series; each pass fixes one more coefficient.
pub fn solve_system(a: &ColoringMatrix, order: usize) -> Result<Vec<TruncatedSeries>> {
    if order == 0 {
        return Err(Error::ZeroDepth);
    }
    let m = a.size();
    let x = TruncatedSeries::x(order);
    let mut f = vec![x.clone(); m];
    for _ in 1..order {
        let next: Vec<TruncatedSeries> = (1..=m)
            .map(|i| {
                let mut s = TruncatedSeries::zero(order);
                for j in a.successors(i) {
                    s = &s + &f[j - 1];
                }
                &x + &(&f[i - 1] * &s)
            })
            .collect();
        f = next;
    }
    Ok(f)
}

/// A relation `sum_k coeffs[k] * G^k = 0` that a series `G` read from a
/// counting table is predicted to satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    pub target: SeriesSelector,
    pub coeffs: Vec<TruncatedSeries>,
    pub description: String,
}

impl Prediction {
    /// `G = series`.
    pub fn equals(target: SeriesSelector, series: TruncatedSeries, description: impl Into<String>) -> Self {
        let order = series.order();
        Prediction {
            target,
            coeffs: vec![-&series, TruncatedSeries::one(order)],
            description: description.into(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.iter().map(TruncatedSeries::order).min().unwrap_or(0)
    }

    pub fn residual(&self, g: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = TruncatedSeries::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &g) + &c.truncate(order);
        }
        acc
    }
}

/// Checks a prediction against a counting table.
pub fn verify_prediction(pred: &Prediction, table: &SequenceTable) -> Result<EquationVerdict> {
    let g = series_from_counts(table, pred.target)?;
    Ok(verdict_of(&pred.residual(&g)))
}

/// Basis of the right null space of `rows` over the rationals.
fn nullspace(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &k * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to coprime integers.
fn to_primitive_ints(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// `q(n) a(n) = p(n) a(n-1)` for `n >= valid_from`, with `a(n)` the term at
/// 1-based index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricGuess {
    pub p: IntPoly,
    pub q: IntPoly,
    pub valid_from: usize,
}

/// How many leading terms past the first nonzero one a guesser may skip.
pub const MAX_SKIP: usize = 2;
/// Minimum number of held-out terms a guess must verify on.
pub const HELD_OUT: usize = 4;

fn first_nonzero(terms: &[BigInt]) -> Option<usize> {
    terms.iter().position(|t| !t.is_zero())
}

/// Fits `q(n) a(n) = p(n) a(n-1)` with `deg p, deg q <= max_degree`.
/// `terms[0]` is `a(1)`.
pub fn guess_hypergeometric(terms: &[BigInt], max_degree: usize) -> Option<HypergeometricGuess> {
    let start = first_nonzero(terms)?;
    for skip in 0..=MAX_SKIP {
        // 0-based index of the first term used; relations start one later.
        let s = start + skip;
        for d in 0..=max_degree {
            let unknowns = 2 * d + 2;
            let rows_avail = terms.len().saturating_sub(s + 1);
            if rows_avail < unknowns + HELD_OUT {
                break;
            }
            let row = |k: usize| -> Vec<BigRational> {
                let n = BigInt::from(k as u64 + 1);
                let a = &terms[k];
                let b = &terms[k - 1];
                let mut v = Vec::with_capacity(unknowns);
                let mut pw = BigInt::one();
                for _ in 0..=d {
                    v.push(BigRational::from_integer(&pw * a));
                    pw *= &n;
                }
                let mut pw = BigInt::one();
                for _ in 0..=d {
                    v.push(BigRational::from_integer(-(&pw * b)));
                    pw *= &n;
                }
                v
            };
            let train: Vec<Vec<BigRational>> = (s + 1..s + 1 + unknowns).map(row).collect();
            for v in nullspace(train, unknowns) {
                let ints = to_primitive_ints(&v);
                let mut q = IntPoly::new(ints[..=d].to_vec());
                let mut p = IntPoly::new(ints[d + 1..].to_vec());
                if q.is_zero() {
                    continue;
                }
                if q.leading().is_negative() {
                    q = -&q;
                    p = -&p;
                }
                let ok = (s + 1..terms.len()).all(|k| {
                    let n = BigInt::from(k as u64 + 1);
                    let qn = q.eval_int(&n);
                    !qn.is_zero() && qn * &terms[k] == p.eval_int(&n) * &terms[k - 1]
                });
                if ok {
                    return Some(HypergeometricGuess {
                        p,
                        q,
                        valid_from: s + 2,
                    });
                }
            }
        }
    }
    None
}

/// `sum_{i=0}^{r} coeffs[i] a(n-i) = 0` for `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coeffs: Vec<BigInt>,
    pub valid_from: usize,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn characteristic(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }
}

/// Minimal-order constant-coefficient recurrence verified on held-out terms.
pub fn guess_linear_recurrence(terms: &[BigInt], max_order: usize) -> Option<LinearRecurrence> {
    let start = first_nonzero(terms)?;
    for r in 1..=max_order {
        for skip in 0..=MAX_SKIP {
            let s = start + skip;
            let unknowns = r + 1;
            let first_row = s + r;
            let rows_avail = terms.len().saturating_sub(first_row);
            if rows_avail < 2 * r + HELD_OUT {
                continue;
            }
            let row = |k: usize| -> Vec<BigRational> {
                (0..=r).map(|i| BigRational::from_integer(terms[k - i].clone())).collect()
            };
            let train: Vec<Vec<BigRational>> = (first_row..first_row + 2 * r).map(row).collect();
            for v in nullspace(train, unknowns) {
                if v[0].is_zero() || v[r].is_zero() {
                    continue;
                }
                let mut c = to_primitive_ints(&v);
                if c[0].is_negative() {
                    c.iter_mut().for_each(|x| *x = -&*x);
                }
                let ok = (first_row..terms.len()).all(|k| {
                    (0..=r).fold(BigInt::zero(), |acc, i| acc + &c[i] * &terms[k - i]).is_zero()
                });
                if ok {
                    return Some(LinearRecurrence {
                        coeffs: c,
                        valid_from: first_row + 1,
                    });
                }
            }
        }
    }
    None
}

/// True if all terms from some index on are equal.
pub fn is_eventually_constant(terms: &[BigInt], tail: usize) -> bool {
    let n = terms.len();
    if n < tail {
        return false;
    }
    terms[n - tail..].iter().all(|t| *t == terms[n - 1])
}
