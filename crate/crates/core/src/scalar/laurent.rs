//! Laurent polynomials in q with rational coefficients: the storage form of
//! symbolic R-matrix entries. Elimination never happens at this level; a
//! Laurent entry is always evaluated at a concrete q (rational or modular)
//! before any linear algebra runs.

use std::collections::BTreeMap;

use super::{Field, Rational};
use crate::error::{Error, Result};

/// Finite map exponent → coefficient; no zero coefficients are stored and
/// the empty map is 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// c·qᵉ
    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Exact substitution of a rational q. Negative exponents demand q ≠ 0.
    pub fn evaluate(&self, q: &Rational) -> Result<Rational> {
        self.evaluate_in(&super::Rationals, q)
    }

    /// Substitution in an arbitrary field.
    pub fn evaluate_in<F: Field>(&self, field: &F, q: &F::Elem) -> Result<F::Elem> {
        if field.is_zero(q) && self.terms.keys().any(|e| *e < 0) {
            return Err(Error::invalid(
                "cannot evaluate negative q-exponents at q = 0",
            ));
        }
        let mut acc = field.zero();
        for (exp, coeff) in &self.terms {
            let c = field.from_rational(coeff)?;
            let term = if *exp == 0 {
                c
            } else {
                field.mul(&c, &field.pow_i64(q, *exp)?)
            };
            acc = field.add(&acc, &term);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn zero_evaluates_to_zero() {
        assert_eq!(LaurentPolynomial::zero().evaluate(&r("3/2")).unwrap(), r("0"));
        assert_eq!(LaurentPolynomial::zero().evaluate(&r("-7")).unwrap(), r("0"));
    }

    #[test]
    fn q_plus_q_inverse_at_three_halves() {
        // q + q⁻¹ = 2_q
        let mut f = LaurentPolynomial::zero();
        f.add_term(1, &r("1"));
        f.add_term(-1, &r("1"));
        assert_eq!(f.evaluate(&r("3/2")).unwrap(), r("13/6"));
    }

    #[test]
    fn q_squared_minus_one_vanishes_at_one() {
        let mut f = LaurentPolynomial::zero();
        f.add_term(2, &r("1"));
        f.add_term(0, &r("-1"));
        assert_eq!(f.evaluate(&r("1")).unwrap(), r("0"));
    }

    #[test]
    fn negative_exponent_at_zero_is_an_error() {
        let f = LaurentPolynomial::monomial(-1, r("1"));
        assert!(f.evaluate(&r("0")).is_err());
        let g = LaurentPolynomial::monomial(2, r("1"));
        assert_eq!(g.evaluate(&r("0")).unwrap(), r("0"));
    }

    #[test]
    fn cancelling_terms_vanish() {
        let mut f = LaurentPolynomial::monomial(3, r("1/2"));
        f.add_term(3, &r("-1/2"));
        assert!(f.is_zero());
    }
}
