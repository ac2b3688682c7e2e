//! Brute-force classical references: the permutation-averaged symmetrizer
//! (the q = 1 ground truth the recursion must reproduce) and the degree-2
//! symmetrizer of V⊗V itself.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hecke::HeckeSymmetry;
use crate::matrix::SquareMatrix;
use crate::scalar::{quantum_integer_in, Field, Rationals};

/// (1/n!) Σ_σ P_σ on W⊗ⁿ with dim W = N², built by explicit enumeration of
/// all n! leg permutations. Independent of the tower recursion.
pub fn classical_oracle_in<F: Field>(field: &F, n: usize, big_n: usize) -> Result<SquareMatrix<F>> {
    if n == 0 || big_n == 0 {
        return Err(Error::invalid("classical oracle requires n >= 1 and N >= 1"));
    }
    if n > 8 {
        return Err(Error::invalid("classical oracle is desk-scale: n <= 8"));
    }
    let w = big_n * big_n;
    let dim = w.checked_pow(n as u32).ok_or_else(|| Error::invalid("dimension overflow"))?;
    let mut factorial = 1i64;
    for i in 1..=n as i64 {
        factorial *= i;
    }
    let weight = field.inv(&field.from_i64(factorial))?;

    let mut m = SquareMatrix::zeros(field.clone(), dim);
    let mut digits = vec![0usize; n];
    for perm in (0..n).permutations(n) {
        for source in 0..dim {
            let mut rest = source;
            for d in (0..n).rev() {
                digits[d] = rest % w;
                rest /= w;
            }
            let mut target = 0usize;
            for d in 0..n {
                target = target * w + digits[perm[d]];
            }
            let v = field.add(m.get(target, source), &weight);
            m.set(target, source, v);
        }
    }
    Ok(m)
}

/// Rational-backend convenience form.
pub fn classical_oracle(n: usize, big_n: usize) -> Result<SquareMatrix<Rationals>> {
    classical_oracle_in(&Rationals, n, big_n)
}

/// The degree-2 symmetrizer of the R-symmetric algebra of V itself:
/// (R + q⁻¹I)/2_q on V⊗V, projecting onto the q-eigenspace of R.
pub fn v_symmetrizer_2<F: Field>(h: &HeckeSymmetry<F>) -> Result<SquareMatrix<F>> {
    let field = h.field().clone();
    let q_elem = field.from_rational(h.q().rational())?;
    let two_q = quantum_integer_in(&field, 2, &q_elem)?;
    if field.is_zero(&two_q) {
        return Err(Error::DegenerateParameter("2_q = 0".into()));
    }
    let mut m = h.matrix().clone();
    m.add_scaled_identity(&field.inv(&q_elem)?);
    Ok(m.scale(&field.inv(&two_q)?))
}
