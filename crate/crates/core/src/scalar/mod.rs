//! Exact coefficient fields: arbitrary-precision rationals, large prime
//! fields, Laurent polynomials in the deformation parameter q, and quantum
//! integers.
//!
//! All downstream linear algebra is generic over [`Field`]. A field here is a
//! small context value (zero-sized for the rationals, the modulus for a prime
//! field) whose methods operate on elements by reference, so matrices can
//! store plain element buffers.

mod laurent;
mod prime;
mod rational;
pub(crate) mod ratmul;

pub use laurent::LaurentPolynomial;
pub use prime::{is_prime_u64, prime_sequence, PrimeField, PrimeFieldScalar};
pub(crate) use prime::crt_nonneg;
pub use rational::{Rational, Rationals};

use crate::error::{Error, Result};

/// An exact computational field.
///
/// Implementations must be exact: `add`, `mul`, `inv` return the
/// mathematically correct element, never an approximation. Elements are
/// immutable values; contexts are cheap to clone and shareable across
/// threads.
pub trait Field: Clone + PartialEq + Send + Sync + std::fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Send + Sync + std::fmt::Debug + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; fails on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Image of an exact rational in this field. Fails when the denominator
    /// is not invertible (bad prime).
    fn from_rational(&self, r: &Rational) -> Result<Self::Elem>;

    /// Exact textual form, never a float: `num/den` for rationals, the
    /// residue digits for prime fields.
    fn render(&self, a: &Self::Elem) -> String;

    /// Size measure used for pivot selection and residual reports.
    fn bit_size(&self, a: &Self::Elem) -> u64;

    fn pow_i64(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Short backend label used in reports ("rational", "prime:1009", ...).
    fn name(&self) -> String;

    /// Dense row-major matrix product, `a` of shape `ar × ac`, `b` of shape
    /// `ac × bc`. Backends override this with a fast kernel.
    fn matmul(&self, ar: usize, ac: usize, a: &[Self::Elem], bc: usize, b: &[Self::Elem]) -> Vec<Self::Elem> {
        debug_assert_eq!(a.len(), ar * ac);
        debug_assert_eq!(b.len(), ac * bc);
        let mut out = vec![self.zero(); ar * bc];
        for i in 0..ar {
            for k in 0..ac {
                let aik = &a[i * ac + k];
                if self.is_zero(aik) {
                    continue;
                }
                let brow = &b[k * bc..(k + 1) * bc];
                let orow = &mut out[i * bc..(i + 1) * bc];
                for (o, bv) in orow.iter_mut().zip(brow) {
                    if !self.is_zero(bv) {
                        *o = self.add(o, &self.mul(aik, bv));
                    }
                }
            }
        }
        out
    }

    /// Rescale an elimination row to a canonical cheap form (primitive
    /// integer vector for the rationals). No-op by default.
    fn normalize_row(&self, _row: &mut [Self::Elem]) {}

    /// Ascending monic coefficients of the minimal polynomial of a `dim`
    /// square row-major matrix. The default detects the first exact linear
    /// dependence among vectorized powers; the rational backend swaps in a
    /// modular-certified route for large matrices.
    fn matrix_minimal_polynomial(&self, dim: usize, entries: &[Self::Elem]) -> Result<Vec<Self::Elem>> {
        crate::matrix::minpoly::minpoly_generic(self, dim, entries)
    }
}

/// A validated nonzero rational value of the deformation parameter q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QValue {
    q: Rational,
}

impl QValue {
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::invalid("q must be nonzero"));
        }
        Ok(QValue { q })
    }

    /// Parse `"num/den"` (or a bare integer) into a nonzero q.
    pub fn parse(s: &str) -> Result<Self> {
        QValue::new(Rational::parse(s)?)
    }

    pub fn one() -> Self {
        QValue { q: Rational::from_i64(1) }
    }

    pub fn rational(&self) -> &Rational {
        &self.q
    }

    pub fn is_one(&self) -> bool {
        self.q == Rational::from_i64(1)
    }

    /// Check that every quantum integer k_q for 1 ≤ k ≤ `k_max` is nonzero
    /// in `field`; each such value appears as a denominator somewhere in the
    /// tower, so a vanishing one means q degenerates at this level range.
    pub fn ensure_generic_in<F: Field>(&self, field: &F, k_max: i64) -> Result<()> {
        let q_elem = field.from_rational(&self.q)?;
        for k in 1..=k_max {
            let kq = quantum_integer_in(field, k, &q_elem)?;
            if field.is_zero(&kq) {
                return Err(Error::DegenerateParameter(format!(
                    "quantum integer {k}_q vanishes at q={} in {}",
                    self.q,
                    field.name()
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for QValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// The quantum integer k_q = (qᵏ − q⁻ᵏ)/(q − q⁻¹), evaluated through its
/// expanded form qᵏ⁻¹ + qᵏ⁻³ + … + q¹⁻ᵏ, which is exact for every nonzero q
/// and realizes the limit value k·qᵏ⁻¹ at q = ±1 with no special casing.
pub fn quantum_integer(k: i64, q: &QValue) -> Rational {
    let field = Rationals;
    let q_elem = q.rational().clone();
    quantum_integer_in(&field, k, &q_elem).expect("nonzero q")
}

/// Quantum integer in an arbitrary field; fails when q is not invertible.
pub fn quantum_integer_in<F: Field>(field: &F, k: i64, q: &F::Elem) -> Result<F::Elem> {
    if field.is_zero(q) {
        return Err(Error::invalid("quantum integer requires q != 0"));
    }
    if k == 0 {
        return Ok(field.zero());
    }
    if k < 0 {
        return Ok(field.neg(&quantum_integer_in(field, -k, q)?));
    }
    let q_inv_sq = {
        let inv = field.inv(q)?;
        field.mul(&inv, &inv)
    };
    // q^{k-1} + q^{k-3} + ... + q^{1-k}
    let mut term = field.pow_i64(q, k - 1)?;
    let mut acc = field.zero();
    for _ in 0..k {
        acc = field.add(&acc, &term);
        term = field.mul(&term, &q_inv_sq);
    }
    Ok(acc)
}

/// Residue of an exact rational modulo p: numerator · denominator⁻¹ mod p.
pub fn to_prime_field(x: &Rational, p: u64) -> Result<PrimeFieldScalar> {
    let field = PrimeField::new(p)?;
    let residue = field.from_rational(x)?;
    Ok(PrimeFieldScalar::new(residue, p))
}
