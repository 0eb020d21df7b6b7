//! Exact univariate polynomials in `t`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::notation::superscript;

/// Integer polynomial, constant term first, no trailing zero coefficients.
///
/// Serializes as an array of decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::decimal::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntegerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::decimal::vec::deserialize(d).map(IntegerPolynomial::new)
    }
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * t + BigRational::from_integer(c.clone())
        })
    }

    /// Coefficient-reversed polynomial `t^d p(1/t)` of the same degree.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub(crate) fn to_rational(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }
}

impl fmt::Display for IntegerPolynomial {
    /// Written with a Unicode minus and superscript exponents, e.g.
    /// `1 − 2t² − 2t³ + t⁴`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("−")?,
                (true, false) => {}
                (false, true) => f.write_str(" − ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let magnitude = c.abs();
            if i == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t{}", superscript(i as i64))?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial used for exact root isolation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly {
    pub(crate) coeffs: Vec<BigRational>,
}

impl QPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("non-zero polynomial")
    }

    pub(crate) fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub(crate) fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub(crate) fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub(crate) fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (QPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + dd] / divisor.lead();
            if factor.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &factor * c;
            }
            quot[k] = factor;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub(crate) fn monic(&self) -> QPoly {
        let lead = self.lead().clone();
        QPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub(crate) fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub(crate) fn squarefree(&self) -> QPoly {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn display_matches_written_form() {
        let p = IntegerPolynomial::from_i64s(&[1, 0, -2, -2, 1, 2, 1]);
        assert_eq!(p.to_string(), "1 − 2t² − 2t³ + t⁴ + 2t⁵ + t⁶");
        assert_eq!(IntegerPolynomial::one().to_string(), "1");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
        assert_eq!(IntegerPolynomial::from_i64s(&[0, -1]).to_string(), "−t");
    }

    #[test]
    fn product_and_power() {
        let m = IntegerPolynomial::from_i64s(&[1, 0, -1, -1]);
        assert_eq!(
            m.pow(2),
            IntegerPolynomial::from_i64s(&[1, 0, -2, -2, 1, 2, 1])
        );
        assert_eq!(IntegerPolynomial::from_i64s(&[3, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn squarefree_part() {
        let p = IntegerPolynomial::from_i64s(&[1, 0, -2, -2, 1, 2, 1]).to_rational();
        let s = p.squarefree();
        assert_eq!(s.degree(), 3);
        let (_, r) = p.div_rem(&s);
        assert!(r.is_zero());
        // roots unchanged: s is a scalar multiple of 1 - t² - t³
        let base = IntegerPolynomial::from_i64s(&[1, 0, -1, -1]).to_rational();
        assert_eq!(s.monic(), base.monic());
        assert_eq!(base.eval(&q(1)), q(-1));
    }
}
