//! Closed-form counting formulas evaluated in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::count_by_root;
use crate::error::{Error, Result};
use crate::matrix::ColoringMatrix;
use crate::poly::{BivariatePolynomial, IntPoly};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow_i(base: i64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `top (top-1) ... (top-k+1) / k!`.
pub fn binom_rational(top: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = top.clone();
    for i in 1..=k {
        acc = acc * &t / rat(i as i64);
        t -= BigRational::one();
    }
    acc
}

/// Binomial coefficient with integer top (possibly negative); zero for `k < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    binom_rational(&rat(n), k as u64).to_integer()
}

pub fn catalan(n: u64) -> BigInt {
    binom(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// `N_{n,k} = C(n,k) C(n,k-1) / n`, zero outside `1 <= k <= n`.
pub fn narayana(n: u64, k: u64) -> BigInt {
    if n == 0 || k == 0 || k > n {
        return BigInt::zero();
    }
    binom(n as i64, k as i64) * binom(n as i64, k as i64 - 1) / BigInt::from(n)
}

/// `F_1 = F_2 = 1`, `F_0 = 0`.
pub fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// `R_0 = 1`, `R_n = sum_k N_{n,k} 2^k`.
pub fn schroder_large(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    (1..=n).map(|k| narayana(n, k) * pow_i(2, k as u32)).sum()
}

/// `r_0 = r_1 = 1`, `(n+1) r_n = 3(2n-1) r_{n-1} - (n-2) r_{n-2}`.
pub fn schroder_little(n: u64) -> BigInt {
    let mut r = vec![BigInt::one(), BigInt::one()];
    for k in 2..=n as i64 {
        let v = (BigInt::from(3 * (2 * k - 1)) * &r[k as usize - 1]
            - BigInt::from(k - 2) * &r[k as usize - 2])
            / BigInt::from(k + 1);
        r.push(v);
    }
    r[n as usize].clone()
}

/// `D_n` for `n = 1..=depth`: trees counted by the root-1 row of `11;01`.
pub fn antichain_numbers(depth: usize) -> Vec<BigUint> {
    let a = "11;01".parse::<ColoringMatrix>().expect("valid literal");
    count_by_root(&a, depth).expect("depth >= 1").per_color[0].clone()
}

pub fn antichain(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    antichain_numbers(n as usize)[n as usize - 1].clone().into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedSequence {
    Catalan,
    Fibonacci,
    SchroderLarge,
    SchroderLittle,
    Antichain,
}

impl NamedSequence {
    pub fn eval(self, n: u64) -> BigInt {
        match self {
            NamedSequence::Catalan => catalan(n),
            NamedSequence::Fibonacci => fibonacci(n),
            NamedSequence::SchroderLarge => schroder_large(n),
            NamedSequence::SchroderLittle => schroder_little(n),
            NamedSequence::Antichain => antichain(n),
        }
    }
}

/// Which generating function of `A(l,m)` a Family 2 formula counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family2Part {
    Total,
    /// Root color in `1..=l`.
    Upper,
    /// Root color in `l+1..=l+m`.
    Lower,
}

/// `num(n)/den(n) * base^(n+shift) * binom(a n + b, c n + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperTerm {
    pub num: IntPoly,
    pub den: IntPoly,
    pub base: i64,
    pub shift: i64,
    pub binom: (i64, i64, i64, i64),
}

impl HyperTerm {
    /// `c * base^(n+shift) * C_{n-1}`.
    pub fn scaled_catalan(c: i64, base: i64, shift: i64) -> Self {
        HyperTerm {
            num: IntPoly::constant(c),
            den: IntPoly::from_i64(&[0, 1]),
            base,
            shift,
            binom: (2, -2, 1, -1),
        }
    }

    /// `num(n)/den(n) * binom(a n + b, c n + d)`.
    pub fn ratio_binom(num: &[i64], den: &[i64], binom: (i64, i64, i64, i64)) -> Self {
        HyperTerm {
            num: IntPoly::from_i64(num),
            den: IntPoly::from_i64(den),
            base: 1,
            shift: 0,
            binom,
        }
    }

    fn eval(&self, n: i64) -> Result<BigRational> {
        let nr = rat(n);
        let den = self.den.eval(&nr);
        if den.is_zero() {
            return Err(Error::OutOfRange {
                what: "formula argument",
                detail: format!("denominator vanishes at n = {n}"),
            });
        }
        let e = n + self.shift;
        let pw = if e >= 0 {
            BigRational::from_integer(pow_i(self.base, e as u32))
        } else {
            BigRational::from_integer(pow_i(self.base, (-e) as u32)).recip()
        };
        let (a, b, c, d) = self.binom;
        let bn = BigRational::from_integer(binom(a * n + b, c * n + d));
        Ok(self.num.eval(&nr) / den * pw * bn)
    }
}

/// A counting formula in the variable `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Constant(i64),
    /// `scale * seq(n + offset)`.
    Named {
        seq: NamedSequence,
        offset: i64,
        scale: i64,
    },
    Hyper(HyperTerm),
    Sum(Vec<Formula>),
    /// `(2/n) C(3n-3, n-1)`.
    IndependentSets,
    /// `(m/n) C((m+1)(n-1), n-1)`.
    KPlane { m: u32 },
    /// `sum_k N_{n-1,k} l^(n-k) (l+m)^k`.
    Family1 { l: u32, m: u32 },
    /// Sum formulas for `A(l,m)`; `variant` 1, 2 or 3 selects the summation.
    Family2 {
        l: u32,
        m: u32,
        variant: u8,
        part: Family2Part,
    },
    /// `2^(n-1) + m - 3`.
    Family3 { m: u32 },
    /// `(l/n) 2^(2n-1) binom((l+1)n/2 - l/2 - 1, n-1)`.
    Family4 { l: u32 },
}

impl Formula {
    /// Least `n` at which the formula is claimed.
    pub fn valid_from(&self) -> u64 {
        match self {
            Formula::Family1 { .. } | Formula::Family3 { .. } => 2,
            Formula::Family2 { variant, part, .. } => match (variant, part) {
                (1, Family2Part::Upper) | (2, Family2Part::Upper) | (3, Family2Part::Upper) => 1,
                _ => 2,
            },
            Formula::Sum(parts) => parts.iter().map(Formula::valid_from).max().unwrap_or(1),
            _ => 1,
        }
    }
}

fn integral(v: BigRational, what: &Formula, n: u64) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{what:?} at n = {n} gives {v}")))
    }
}

/// Evaluates `f` at `n` exactly; errors if the result is not an integer.
pub fn eval_formula(f: &Formula, n: u64) -> Result<BigInt> {
    if n < f.valid_from() {
        return Err(Error::OutOfRange {
            what: "formula argument",
            detail: format!("n = {n} below {}", f.valid_from()),
        });
    }
    integral(eval_rational(f, n)?, f, n)
}

fn eval_rational(f: &Formula, n: u64) -> Result<BigRational> {
    let ni = n as i64;
    let r = |v: BigInt| BigRational::from_integer(v);
    Ok(match f {
        Formula::Constant(c) => rat(*c),
        Formula::Named { seq, offset, scale } => {
            let idx = ni + offset;
            if idx < 0 {
                return Err(Error::OutOfRange {
                    what: "sequence index",
                    detail: format!("{idx}"),
                });
            }
            r(seq.eval(idx as u64) * BigInt::from(*scale))
        }
        Formula::Hyper(h) => h.eval(ni)?,
        Formula::Sum(parts) => {
            let mut acc = BigRational::zero();
            for p in parts {
                acc += eval_rational(p, n)?;
            }
            acc
        }
        Formula::IndependentSets => rat(2) / rat(ni) * r(binom(3 * ni - 3, ni - 1)),
        Formula::KPlane { m } => {
            let m = *m as i64;
            rat(m) / rat(ni) * r(binom((m + 1) * (ni - 1), ni - 1))
        }
        Formula::Family1 { l, m } => {
            let (l, m) = (*l as i64, *m as i64);
            r((1..n)
                .map(|k| {
                    narayana(n - 1, k) * pow_i(l, (n - k) as u32) * pow_i(l + m, k as u32)
                })
                .sum())
        }
        Formula::Family2 { l, m, variant, part } => family2(*l as i64, *m as i64, *variant, *part, ni)?,
        Formula::Family3 { m } => r(pow_i(2, (n - 1) as u32) + BigInt::from(*m as i64 - 3)),
        Formula::Family4 { l } => {
            let l = *l as i64;
            let top = rat(l + 1) * rat(ni) / rat(2) - rat(l) / rat(2) - rat(1);
            rat(l) / rat(ni) * r(pow_i(2, (2 * n - 1) as u32)) * binom_rational(&top, n - 1)
        }
    })
}

/// `base^e` with `0^0 = 1`.
fn ipow(base: i64, e: i64) -> BigRational {
    debug_assert!(e >= 0);
    BigRational::from_integer(pow_i(base, e as u32))
}

fn family2(l: i64, m: i64, variant: u8, part: Family2Part, n: i64) -> Result<BigRational> {
    let r = |v: BigInt| BigRational::from_integer(v);
    let mut acc = BigRational::zero();
    match (variant, part) {
        (1, Family2Part::Total) => {
            for k in 0..n {
                acc += rat(2) / rat(n) * r(binom(n, k) * binom(2 * n - 3, n - k - 1)) * ipow(l, n - k) * ipow(m, k);
            }
        }
        (1, Family2Part::Upper) => {
            for k in 0..n {
                acc += rat(1) / rat(n) * r(binom(n, k) * binom(2 * n - 2, n - k - 1)) * ipow(l, n - k - 1) * ipow(m, k);
            }
        }
        (1, Family2Part::Lower) => {
            for k in 1..n {
                acc += rat(1) / rat(n - 1) * r(binom(n - 1, k - 1) * binom(2 * n - 2, n - k - 1)) * ipow(l, n - k) * ipow(m, k - 1);
            }
        }
        (2, Family2Part::Upper) => {
            for k in 1..=n {
                acc += ipow(m - l, n - k) * ipow(l, k - 1) * r(binom(n, k) * binom(2 * n + k - 2, k - 1));
            }
            acc /= rat(n);
        }
        (2, Family2Part::Lower) => {
            for k in 1..n {
                acc += ipow(m - l, n - k - 1) * ipow(l, k) * r(binom(n - 1, k) * binom(2 * n + k - 2, k - 1));
            }
            acc /= rat(n - 1);
        }
        (2, Family2Part::Total) => {
            for k in 1..=n {
                // At k = n the linear factor equals (m-l)(n-1), cancelling the
                // negative power of (m-l).
                let weighted = if k == n {
                    rat(n - 1)
                } else {
                    rat((2 * m - l) * n - m * k + (l - m)) * ipow(m - l, n - k - 1)
                };
                acc += weighted * ipow(l, k) * r(binom(n, k) * binom(2 * n + k - 2, k - 1));
            }
            acc /= rat(n * (n - 1));
        }
        (3, Family2Part::Upper) => {
            for k in 0..n {
                acc += ipow(l - m, k) * ipow(m, n - k - 1) * r(binom(2 * n - 2, k) * binom(3 * n - k - 2, n - k - 1));
            }
            acc /= rat(n);
        }
        (3, Family2Part::Lower) => {
            for k in 0..=n - 2 {
                acc += ipow(l - m, k) * ipow(m, n - k - 2) * r(binom(2 * n - 2, k) * binom(3 * n - k - 3, n - k - 2));
            }
            acc = acc * rat(l) / rat(n - 1);
        }
        (3, Family2Part::Total) => {
            for k in 0..n {
                acc += ipow(l - m, k) * ipow(m, n - k - 1) * r(binom(2 * n - 3, k) * binom(3 * n - k - 3, n - k - 1));
            }
            acc = acc * rat(2 * l) / rat(n);
        }
        _ => {
            return Err(Error::OutOfRange {
                what: "Family 2 variant",
                detail: format!("{variant} not in 1..=3"),
            })
        }
    }
    Ok(acc)
}

/// Both sides of `sum_k C(2n-k, n-k) (-2)^k binom(x,k) = 4^n binom(n-(x+1)/2, n)`.
pub fn hyper_identity_sides(n: u64, x: &BigRational) -> (BigRational, BigRational) {
    let ni = n as i64;
    let lhs = (0..=n)
        .map(|k| {
            let ki = k as i64;
            BigRational::from_integer(binom(2 * ni - ki, ni - ki) * pow_i(-2, k as u32))
                * binom_rational(x, k)
        })
        .fold(BigRational::zero(), |a, b| a + b);
    let top = rat(ni) - (x + rat(1)) / rat(2);
    let rhs = BigRational::from_integer(pow_i(4, n as u32)) * binom_rational(&top, n);
    (lhs, rhs)
}

pub fn verify_hyper_identity(n: u64, x: &BigRational) -> bool {
    let (l, r) = hyper_identity_sides(n, x);
    l == r
}

/// Polynomials attached to the strictly-lower-triangular family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family5Polys {
    pub p: IntPoly,
    pub q: IntPoly,
    pub s: IntPoly,
    pub t: IntPoly,
}

/// `p_1 = x, q_1 = 1, p_m = p q, q_m = q^2 - p^2/x`, and
/// `S_1 = x, T_1 = 1, S_m = S^2 - T^2, T_m = S T`.
pub fn family5_polys(m: u32) -> Result<Family5Polys> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "colors",
            detail: "m must be at least 1".into(),
        });
    }
    let (mut p, mut q) = (IntPoly::x(), IntPoly::constant(1));
    let (mut s, mut t) = (IntPoly::x(), IntPoly::constant(1));
    for _ in 1..m {
        let p2 = &p * &q;
        let q2 = &(&q * &q) - &(&p * &p).div_x().expect("p has zero constant term");
        let s2 = &(&s * &s) - &(&t * &t);
        let t2 = &s * &t;
        p = p2;
        q = q2;
        s = s2;
        t = t2;
    }
    Ok(Family5Polys { p, q, s, t })
}

/// Polynomials attached to the lower-triangular family, with the
/// annihilating relation for the top-color generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family6Polys {
    pub p: IntPoly,
    pub q: IntPoly,
    pub relation: BivariatePolynomial,
}

fn family6_pq(m: u32) -> (IntPoly, IntPoly) {
    let (mut p, mut q) = (IntPoly::x(), IntPoly::constant(1));
    for _ in 1..m {
        let p2 = &(&p * &p) + &(&q * &q);
        let q2 = &p * &q;
        p = p2;
        q = q2;
    }
    (p, q)
}

/// `P_1 = x, Q_1 = 1, P_m = P^2 + Q^2, Q_m = P Q`; the relation is
/// `s^(2^m) (s^-1 Q_{m+1}(F/s) - P_{m+1}(F/s))` with `s^2 = x`.
pub fn family6_polys(m: u32) -> Result<Family6Polys> {
    if m == 0 || m > 12 {
        return Err(Error::OutOfRange {
            what: "colors",
            detail: format!("{m} not in 1..=12"),
        });
    }
    let (p, q) = family6_pq(m);
    let (p1, q1) = family6_pq(m + 1);
    let top = 1i64 << m;
    // Exponent of s for each F^k term, before halving.
    let mut terms: Vec<(u32, i64, BigInt)> = Vec::new();
    for (k, c) in q1.coeffs().iter().enumerate() {
        if !c.is_zero() {
            terms.push((k as u32, top - 1 - k as i64, c.clone()));
        }
    }
    for (k, c) in p1.coeffs().iter().enumerate() {
        if !c.is_zero() {
            terms.push((k as u32, top - k as i64, -c.clone()));
        }
    }
    let mut relation = BivariatePolynomial::zero();
    for (k, e, c) in terms {
        if e < 0 || e % 2 != 0 {
            return Err(Error::OddSqrtPower(format!("F^{k} s^{e}")));
        }
        relation.add_term(k, (e / 2) as u32, c);
    }
    Ok(Family6Polys { p, q, relation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_binomials() {
        let half3 = BigRational::new(3.into(), 2.into());
        assert_eq!(binom_rational(&half3, 2), BigRational::new(3.into(), 8.into()));
        assert_eq!(binom_rational(&rat(5), 2), rat(10));
        assert_eq!(binom_rational(&BigRational::new((-1).into(), 2.into()), 0), rat(1));
        assert_eq!(binom(-1, 0), BigInt::one());
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(-2, 3), BigInt::from(-4));
    }

    #[test]
    fn formula_examples() {
        let e = |f: &Formula, n| eval_formula(f, n).unwrap();
        assert_eq!(e(&Formula::IndependentSets, 6), 1001.into());
        assert_eq!(e(&Formula::KPlane { m: 3 }, 4), 165.into());
        let f2 = |l, m| Formula::Family2 { l, m, variant: 1, part: Family2Part::Total };
        assert_eq!(e(&f2(1, 2), 5), 746.into());
        assert_eq!(e(&f2(2, 1), 4), 304.into());
        assert_eq!(e(&Formula::Family4 { l: 1 }, 3), 4.into());
        assert_eq!(e(&Formula::Family4 { l: 3 }, 2), 18.into());
        let entry = Formula::Hyper(HyperTerm::ratio_binom(&[-4, 7], &[0, -1, 2], (3, -3, 1, -1)));
        assert_eq!(e(&entry, 6), 1729.into());
        assert!(eval_formula(&Formula::Family3 { m: 4 }, 1).is_err());
    }

    #[test]
    fn non_integral_is_reported() {
        let half = Formula::Hyper(HyperTerm::ratio_binom(&[1], &[2], (0, 0, 0, 0)));
        assert!(matches!(eval_formula(&half, 1), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn named_sequences() {
        let v = |f: fn(u64) -> BigInt, r: std::ops::Range<u64>| r.map(f).collect::<Vec<_>>();
        let b = |x: &[i64]| x.iter().map(|&y| BigInt::from(y)).collect::<Vec<_>>();
        assert_eq!(v(catalan, 0..6), b(&[1, 1, 2, 5, 14, 42]));
        assert_eq!(v(fibonacci, 1..7), b(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(v(schroder_large, 0..6), b(&[1, 2, 6, 22, 90, 394]));
        assert_eq!(v(schroder_little, 0..6), b(&[1, 1, 3, 11, 45, 197]));
        assert_eq!(v(antichain, 1..6), b(&[1, 2, 7, 29, 131]));
    }

    #[test]
    fn hyper_identity_small() {
        for n in 0..6 {
            assert!(verify_hyper_identity(n, &rat(2)));
        }
        assert!(verify_hyper_identity(10, &BigRational::new((-7).into(), 2.into())));
    }

    #[test]
    fn family5_small() {
        let f2 = family5_polys(2).unwrap();
        assert_eq!(f2.p, IntPoly::from_i64(&[0, 1]));
        assert_eq!(f2.q, IntPoly::from_i64(&[1, -1]));
        let f3 = family5_polys(3).unwrap();
        assert_eq!(f3.p, IntPoly::from_i64(&[0, 1, -1]));
        assert_eq!(f3.q, IntPoly::from_i64(&[1, -3, 1]));
        let f4 = family5_polys(4).unwrap();
        assert_eq!(f4.q, IntPoly::from_i64(&[1, -7, 13, -7, 1]));
    }

    #[test]
    fn family6_base_relation() {
        let f = family6_polys(1).unwrap();
        assert_eq!(f.relation, "F - F^2 - x".parse().unwrap());
    }
}
