//! Arbitrary-precision rationals in canonical form and the field context
//! built on them.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::{ratmul, Field};
use crate::error::{Error, Result};

/// An exact rational in canonical form: reduced, denominator positive.
///
/// Wraps `BigRational`, which maintains the canonical form on every
/// operation; the wrapper fixes the textual form used throughout reports
/// and file formats (`num/den`, always with an explicit denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_integers(numer: i64, denom: i64) -> Result<Self> {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Parse `"num/den"` or a bare integer, e.g. `"3/2"`, `"-1/3"`, `"7"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(num_s)
            .map_err(|e| Error::parse(format!("bad numerator {num_s:?}: {e}")))?;
        let denom = BigInt::from_str(den_s)
            .map_err(|e| Error::parse(format!("bad denominator {den_s:?}: {e}")))?;
        Self::new(numer, denom)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn bit_size(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }

    pub(crate) fn from_inner(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

macro_rules! ref_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl std::ops::$trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(std::ops::$trait::$method(self.0, rhs.0))
            }
        }
    };
}

ref_binop!(Add, add);
ref_binop!(Sub, sub);
ref_binop!(Mul, mul);

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// The field of rational numbers (zero-sized context).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        a.recip()
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn from_rational(&self, r: &Rational) -> Result<Rational> {
        Ok(r.clone())
    }

    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }

    fn bit_size(&self, a: &Rational) -> u64 {
        a.bit_size()
    }

    fn name(&self) -> String {
        "rational".to_owned()
    }

    fn matmul(&self, ar: usize, ac: usize, a: &[Rational], bc: usize, b: &[Rational]) -> Vec<Rational> {
        ratmul::matmul(ar, ac, a, bc, b)
    }

    fn normalize_row(&self, row: &mut [Rational]) {
        ratmul::normalize_row_primitive(row);
    }

    fn matrix_minimal_polynomial(&self, dim: usize, entries: &[Rational]) -> crate::error::Result<Vec<Rational>> {
        crate::matrix::minpoly::minpoly_rational_with(dim, entries, |coeffs| {
            Ok(crate::matrix::minpoly::annihilates(&Rationals, dim, entries, coeffs))
        })
    }
}
