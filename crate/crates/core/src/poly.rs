//! Dense univariate polynomials over an abstract exact field, plus the monic
//! wrapper used for minimal polynomials.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and its last element is nonzero otherwise.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> Polynomial<F> {
    pub fn from_coeffs(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_coeffs(field.clone(), vec![c])
    }

    /// Monic product Π (x − rᵢ).
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        let mut coeffs = vec![field.one()];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![field.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add(&next[i + 1], c);
                next[i] = field.sub(&next[i], &field.mul(c, r));
            }
            coeffs = next;
        }
        Polynomial { field, coeffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending-degree coefficients (empty for zero).
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    /// Horner evaluation at a scalar.
    pub fn evaluate(&self, x: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Self::from_coeffs(
            self.field.clone(),
            self.coeffs.iter().map(|c| self.field.mul(c, s)).collect(),
        )
    }

    /// Long division by a monic divisor: self = q·d + r with deg r < deg d.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::invalid("division requires a monic divisor"));
        }
        let f = &self.field;
        let d = divisor.degree().expect("monic implies nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len().saturating_sub(d)];
        while rem.len() > d {
            let lead = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - d;
            if !f.is_zero(&lead) {
                quot[shift] = lead.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let idx = shift + i;
                    rem[idx] = f.sub(&rem[idx], &f.mul(&lead, c));
                }
            }
            rem.pop();
        }
        Ok((
            Self::from_coeffs(self.field.clone(), quot),
            Self::from_coeffs(self.field.clone(), rem),
        ))
    }

    /// Exact synthetic division by (x − root): returns (quotient, remainder).
    pub fn synthetic_div(&self, root: &F::Elem) -> (Self, F::Elem) {
        if self.coeffs.is_empty() {
            return (Self::zero(self.field.clone()), self.field.zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![self.field.zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            quotient[i] = carry.clone();
            carry = self.field.add(&self.coeffs[i], &self.field.mul(&carry, root));
        }
        (Self::from_coeffs(self.field.clone(), quotient), carry)
    }

    /// Multiplicity of `root` (0 when it is not a root).
    pub fn root_multiplicity(&self, root: &F::Elem) -> usize {
        let mut mult = 0;
        let mut current = self.clone();
        loop {
            if current.is_zero() {
                return mult;
            }
            let (q, rem) = current.synthetic_div(root);
            if !self.field.is_zero(&rem) {
                return mult;
            }
            mult += 1;
            current = q;
            if current.coeffs.is_empty() {
                return mult;
            }
        }
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_owned();
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("({})x^{}", self.field.render(c), i))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A polynomial with leading coefficient exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPolynomial<F: Field>(Polynomial<F>);

impl<F: Field> MonicPolynomial<F> {
    pub fn new(p: Polynomial<F>) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::invalid("polynomial is not monic"));
        }
        Ok(MonicPolynomial(p))
    }

    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        MonicPolynomial(Polynomial::from_roots(field, roots))
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("monic implies nonzero")
    }

    pub fn as_poly(&self) -> &Polynomial<F> {
        &self.0
    }

    pub fn evaluate(&self, x: &F::Elem) -> F::Elem {
        self.0.evaluate(x)
    }

    pub fn root_multiplicity(&self, root: &F::Elem) -> usize {
        self.0.root_multiplicity(root)
    }

    /// Divide out one factor (x − root); the division must be exact.
    pub fn deflate_root(&self, root: &F::Elem) -> Result<MonicPolynomial<F>> {
        let field = self.0.field().clone();
        let (q, rem) = self.0.synthetic_div(root);
        if !field.is_zero(&rem) {
            return Err(Error::RootNotPresent {
                value: field.render(root),
                remainder: field.render(&rem),
            });
        }
        Ok(MonicPolynomial(q))
    }

    pub fn render(&self) -> String {
        self.0.render()
    }
}

impl<F: Field> std::ops::Deref for MonicPolynomial<F> {
    type Target = Polynomial<F>;
    fn deref(&self) -> &Polynomial<F> {
        &self.0
    }
}
