//! Minimal polynomials of square matrices.
//!
//! The base algorithm vectorizes I, M, M², … into d²-length rows and feeds
//! them to the incremental elimination until the first exact dependence; the
//! dependence coefficients are the minimal polynomial. Expected degrees here
//! are tiny while d is large, so this beats characteristic-polynomial work.
//!
//! Over the rationals at large dimension the same detection runs modulo
//! several 62-bit primes instead, followed by CRT + rational reconstruction
//! of the coefficients and an exact verification over Q. Independence of the
//! vectorized powers modulo a single good prime already proves independence
//! over Q (a rational dependence scaled primitive survives reduction), so a
//! verified candidate of the certified degree is the minimal polynomial —
//! this path is exact, not probabilistic.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::echelon::{Echelon, Insert};
use crate::error::{Error, Result};
use crate::scalar::{crt_nonneg, prime_sequence, Field, PrimeField, Rational, Rationals};

/// Ascending monic coefficients of the minimal polynomial, by direct
/// elimination over the given field. Exact and complete for every backend.
pub fn minpoly_generic<F: Field>(field: &F, dim: usize, entries: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if dim == 0 {
        return Err(Error::invalid("minimal polynomial of an empty matrix"));
    }
    let width = dim * dim;
    let mut ech = Echelon::new(field.clone(), width, true);

    let mut identity = vec![field.zero(); width];
    for i in 0..dim {
        identity[i * dim + i] = field.one();
    }
    match ech.insert(identity) {
        Insert::Independent => {}
        Insert::Dependent(_) => unreachable!("identity is nonzero"),
    }

    let mut power = entries.to_vec();
    loop {
        match ech.insert(power.clone()) {
            Insert::Dependent(combo) => return Ok(combo),
            Insert::Independent => {
                power = field.matmul(dim, dim, &power, dim, entries);
            }
        }
    }
}

/// Minimal polynomial over Q with a caller-supplied annihilation check.
///
/// For moderate dimensions the direct elimination already is the proof; the
/// `verify` hook is then never called. For large matrices the modular route
/// produces candidates that must be confirmed by `verify` (return Ok(true)
/// exactly when the candidate annihilates the matrix over Q — callers that
/// build towers fold this check into work they do anyway).
pub(crate) fn minpoly_rational_with(
    dim: usize,
    entries: &[Rational],
    mut verify: impl FnMut(&[Rational]) -> Result<bool>,
) -> Result<Vec<Rational>> {
    const DIRECT_DIM_LIMIT: usize = 256;
    const MAX_PRIME_ATTEMPTS: usize = 24;

    if dim <= DIRECT_DIM_LIMIT {
        return minpoly_generic(&Rationals, dim, entries);
    }

    let mut agreeing: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut best_degree = 0usize;
    let mut prime_idx = 0usize;

    for _ in 0..MAX_PRIME_ATTEMPTS {
        let p = prime_sequence(prime_idx);
        prime_idx += 1;
        let pf = PrimeField::new(p)?;
        let reduced: Result<Vec<u64>> = entries.iter().map(|x| pf.from_rational(x)).collect();
        let reduced = match reduced {
            Ok(v) => v,
            Err(_) => continue, // bad prime for these denominators
        };
        let coeffs_p = minpoly_generic(&pf, dim, &reduced)?;
        let deg = coeffs_p.len() - 1;
        // A bad prime can only lower the detected degree, never raise it.
        if deg > best_degree {
            best_degree = deg;
            agreeing.clear();
        }
        if deg == best_degree {
            agreeing.push((p, coeffs_p));
        }
        if agreeing.len() >= 2 {
            if let Some(candidate) = reconstruct_coeffs(&agreeing, best_degree) {
                if verify(&candidate)? {
                    return Ok(candidate);
                }
            }
        }
    }

    // The modular route did not settle; fall back to direct elimination.
    minpoly_generic(&Rationals, dim, entries)
}

/// Exact Horner check that Σ cᵢ Mⁱ = 0.
pub(crate) fn annihilates<F: Field>(
    field: &F,
    dim: usize,
    entries: &[F::Elem],
    coeffs: &[F::Elem],
) -> bool {
    let Some(top) = coeffs.last() else {
        return false;
    };
    let mut acc = vec![field.zero(); dim * dim];
    for i in 0..dim {
        acc[i * dim + i] = top.clone();
    }
    for c in coeffs.iter().rev().skip(1) {
        acc = field.matmul(dim, dim, &acc, dim, entries);
        for i in 0..dim {
            let v = field.add(&acc[i * dim + i], c);
            acc[i * dim + i] = v;
        }
    }
    acc.iter().all(|x| field.is_zero(x))
}

fn reconstruct_coeffs(agreeing: &[(u64, Vec<u64>)], degree: usize) -> Option<Vec<Rational>> {
    let primes: Vec<u64> = agreeing.iter().map(|(p, _)| *p).collect();
    let mut out = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let residues: Vec<u64> = agreeing.iter().map(|(_, c)| c[i]).collect();
        let (x, modulus) = crt_nonneg(&residues, &primes);
        out.push(rational_reconstruct(&x, &modulus)?);
    }
    Some(out)
}

/// Wang-style rational reconstruction: the unique n/d with |n|, d ≤ √(M/2)
/// and n ≡ d·x (mod M), when it exists.
pub(crate) fn rational_reconstruct(x: &BigInt, modulus: &BigInt) -> Option<Rational> {
    let bound: BigInt = (modulus >> 1usize).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), x.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1.abs() > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if !num.gcd(&den).is_one() {
        return None;
    }
    Rational::new(num, den).ok()
}
