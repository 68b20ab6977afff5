//! Power series in `x` truncated at a fixed order, with exact rational
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients `c_0..=c_order` of a series modulo `x^(order+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `x^k` (zero if `k > order`).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(1, order)
    }

    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn from_coeffs(coeffs: Vec<BigRational>, order: usize) -> Self {
        let mut c = coeffs;
        c.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs: c }
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(coeffs: &[T], order: usize) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone().into()))
                .collect(),
            order,
        )
    }

    /// `sum_{n>=1} a_n x^n` from `a_1, a_2, ...`.
    pub fn from_counts(counts: &[BigUint], order: usize) -> Self {
        let mut c = vec![BigRational::zero()];
        c.extend(
            counts
                .iter()
                .map(|v| BigRational::from_integer(BigInt::from(v.clone()))),
        );
        Self::from_coeffs(c, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: BigRational) {
        self.coeffs[k] = v;
    }

    /// Coefficients as integers, or `None` if any is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for i in 0..=order {
            if i + k <= order {
                s.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `1 / self`; `None` when the constant term is zero.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let order = self.order();
        let inv0 = c0.recip();
        let mut out = Self::zero(order);
        out.coeffs[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out.coeffs[n - k];
                }
            }
            out.coeffs[n] = -acc * &inv0;
        }
        Some(out)
    }

    /// `self / other`; `None` when `other` has zero constant term.
    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }
}

fn binop(a: &TruncatedSeries, b: &TruncatedSeries, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries {
        coeffs: (0..=order).map(|k| f(&a.coeffs[k], &b.coeffs[k])).collect(),
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binop(self, rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binop(self, rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !rhs.coeffs[j].is_zero() {
                    out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coeffs()
            .unwrap()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect()
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_x = &TruncatedSeries::one(5) - &TruncatedSeries::x(5);
        assert_eq!(ints(&one_minus_x.inverse().unwrap()), vec![1; 6]);
        assert!(TruncatedSeries::x(3).inverse().is_none());
    }

    #[test]
    fn products_and_powers() {
        let s = TruncatedSeries::from_ints(&[1, 1], 4);
        assert_eq!(ints(&s.pow(3)), vec![1, 3, 3, 1, 0]);
        assert_eq!(ints(&s.shift(2)), vec![0, 0, 1, 1, 0]);
        let q = s.pow(2).div(&s).unwrap();
        assert_eq!(q, s);
    }

    #[test]
    fn counts_embedding() {
        let c: Vec<BigUint> = [2u32, 2, 6].iter().map(|&v| v.into()).collect();
        assert_eq!(ints(&TruncatedSeries::from_counts(&c, 4)), vec![0, 2, 2, 6, 0]);
    }
}
