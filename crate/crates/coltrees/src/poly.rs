//! Integer polynomials in one variable and in the pair `(F, x)`, plus the
//! text grammar for annihilating polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Dense polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division by `x`; `None` if the constant term is nonzero.
    pub fn div_x(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(Self::new(self.coeffs[1..].to_vec()))
    }

    /// `p(x^2)`.
    pub fn compose_square(&self) -> Self {
        let mut c = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[2 * k] = v.clone();
        }
        Self::new(c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(&self.coeffs, order)
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

/// True iff the coefficient list reads the same in both directions.
pub fn check_palindromic(p: &IntPoly) -> bool {
    let c = p.coeffs();
    c.iter().eq(c.iter().rev())
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

fn write_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, BigInt)>,
    mono: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let m = mono(&k);
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if m.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            f.write_str(&m)?;
        } else {
            write!(f, "{a}*{m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone())),
            |k| power("x", *k),
        )
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Polynomial in `F` and `x` with integer coefficients, keyed by
/// `(degree in F, degree in x)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, f_deg: u32, x_deg: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(f_deg, x_deg, c.into());
        p
    }

    pub fn f() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn add_term(&mut self, f_deg: u32, x_deg: u32, c: BigInt) {
        let e = self.terms.entry((f_deg, x_deg)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(f_deg, x_deg));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, f_deg: u32, x_deg: u32) -> BigInt {
        self.terms.get(&(f_deg, x_deg)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_f(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Coefficient of `F^k` as a polynomial in `x`.
    pub fn coeff_of_f(&self, k: u32) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.degree_x() as usize + 1];
        for (&(a, b), v) in &self.terms {
            if a == k {
                c[b as usize] = v.clone();
            }
        }
        IntPoly::new(c)
    }

    /// Builds `sum_k c_k(x) F^k` from the coefficient polynomials.
    pub fn from_f_coeffs(cs: &[IntPoly]) -> Self {
        let mut p = Self::zero();
        for (k, c) in cs.iter().enumerate() {
            for (j, v) in c.coeffs().iter().enumerate() {
                p.add_term(k as u32, j as u32, v.clone());
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Value at `F = series`, modulo `x^(order+1)`. Uses Horner in `F`.
    pub fn evaluate(&self, series: &TruncatedSeries) -> TruncatedSeries {
        let order = series.order();
        let deg = self.degree_f();
        let mut acc = TruncatedSeries::zero(order);
        for k in (0..=deg).rev() {
            acc = &acc * series;
            let c = self.coeff_of_f(k);
            if !c.is_zero() {
                acc = &acc + &c.to_series(order);
            }
        }
        acc
    }

    pub fn gcd_content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut p = self.clone();
        for (&(a, b), c) in &rhs.terms {
            p.add_term(a, b, c.clone());
        }
        p
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                p.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(&(a, b), c)| ((a, b), c.clone())),
            |&(a, b)| {
                let parts: Vec<String> = [power("F", a as usize), power("x", b as usize)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                parts.join("*")
            },
        )
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePolynomial({self})")
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Parses a polynomial in `F` and `x`. Accepts integers, `+`, `-`, `*`
/// (or `·`, or juxtaposition such as `3x^2F`), `^` with integer exponents
/// and parentheses.
pub fn parse_polynomial(text: &str) -> Result<BivariatePolynomial> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn err(&self, msg: &str) -> Error {
        let pos = self
            .chars
            .get(self.pos)
            .map(|c| c.0)
            .unwrap_or_else(|| self.chars.last().map_or(0, |c| c.0 + c.1.len_utf8()));
        Error::Parse {
            pos,
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<BivariatePolynomial> {
        let mut acc = match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') | Some('−') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == '(' || c == 'F' || c == 'x' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BivariatePolynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = e
                .to_u32()
                .filter(|&e| e <= 4096)
                .ok_or_else(|| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<BivariatePolynomial> {
        match self.peek() {
            Some('F') => {
                self.pos += 1;
                Ok(BivariatePolynomial::f())
            }
            Some('x') => {
                self.pos += 1;
                Ok(BivariatePolynomial::x())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(BivariatePolynomial::constant(self.integer()?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_common_forms() {
        let p = parse_polynomial("F^2 + (x - 1)*F + x").unwrap();
        assert_eq!(p.coeff(2, 0), 1.into());
        assert_eq!(p.coeff(1, 1), 1.into());
        assert_eq!(p.coeff(1, 0), (-1).into());
        assert_eq!(p.coeff(0, 1), 1.into());
        let q = parse_polynomial("(x + 2)F^4+(-5x - 1)F^3-3x^2F+x^3").unwrap();
        assert_eq!(q.coeff(4, 1), 1.into());
        assert_eq!(q.coeff(3, 0), (-1).into());
        assert_eq!(q.coeff(1, 2), (-3).into());
        assert_eq!(p, p.to_string().parse().unwrap());
        assert_eq!(q, q.to_string().parse().unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_polynomial("F^").is_err());
        assert!(parse_polynomial("F + y").is_err());
        assert!(parse_polynomial("(F").is_err());
        assert!(parse_polynomial("").is_err());
    }

    #[test]
    fn catalan_is_annihilated() {
        let c = TruncatedSeries::from_ints(&[0, 1, 1, 2, 5, 14, 42], 6);
        let p = parse_polynomial("F^2 - F + x").unwrap();
        assert!(p.evaluate(&c).is_zero());
    }

    #[test]
    fn int_poly_ops() {
        let a = IntPoly::from_i64(&[1, -1]);
        assert_eq!(&a * &a, IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!(a.compose_square(), IntPoly::from_i64(&[1, 0, -1]));
        assert_eq!(IntPoly::from_i64(&[0, 3, 1]).div_x(), Some(IntPoly::from_i64(&[3, 1])));
        assert!(check_palindromic(&IntPoly::from_i64(&[1, -7, 13, -7, 1])));
        assert!(check_palindromic(&IntPoly::from_i64(&[1, -3, 1])));
        assert!(!check_palindromic(&IntPoly::from_i64(&[1, -1])));
        assert!(check_palindromic(&IntPoly::constant(5)));
        assert_eq!(a.to_string(), "1 - x");
    }
}
