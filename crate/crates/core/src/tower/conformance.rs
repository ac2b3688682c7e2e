//! Closed-form root systems of the level minimal polynomials, used to grade
//! computed towers against the published tables.
//!
//! Everything is expressed through squared quantum integers, so the same
//! formulas serve every backend: the rational values are mapped into the
//! working field and tested by exact evaluation, never by symbolic
//! factoring. At q = ±1 several formulas merge; comparisons always go
//! through the deduplicated value set, which is exactly why the degree
//! collapses to 3 there.

use crate::poly::MonicPolynomial;
use crate::scalar::{quantum_integer, Field, QValue, Rational};

/// Expected roots of the minimal polynomial attached to `level` (the one
/// whose deflation builds S⁽ˡᵉᵛᵉˡ⁾), for levels 3, 4, 5. May contain
/// repeats at special q; callers deduplicate.
pub fn expected_root_formulas(level: usize, q: &QValue) -> Option<Vec<Rational>> {
    let sq = |x: &Rational| x * x;
    let int = Rational::from_i64;
    let zero = Rational::zero();
    let one = Rational::one();
    match level {
        3 => {
            let t2 = sq(&quantum_integer(2, q)); // 2_q²
            let nu1 = t2.recip().expect("2_q != 0");
            let nu2 = &sq(&(&t2 - &int(2))) * &sq(&t2).recip().expect("2_q != 0");
            Some(vec![zero, one, nu1, nu2])
        }
        4 => {
            let t2 = sq(&quantum_integer(2, q));
            let t3 = sq(&quantum_integer(3, q)); // 3_q²
            let nu1 = t3.recip().expect("3_q != 0");
            let nu2 = &sq(&(&t2 - &int(2))) * &(&int(4) * &t3).recip().expect("3_q != 0");
            let nu3 = &sq(&(&t3 - &int(3))) * &(&int(4) * &sq(&t3)).recip().expect("3_q != 0");
            Some(vec![zero, one, nu1, nu2, nu3])
        }
        5 => {
            let t2 = sq(&quantum_integer(2, q));
            let t4 = sq(&quantum_integer(4, q)); // 4_q²
            let shared = sq(&(&(&int(2) * &t2) - &int(5))); // (2·2_q² − 5)²
            let nine = int(9);
            let nu1 = t4.recip().expect("4_q != 0");
            let nu2 = &shared * &(&nine * &sq(&t2)).recip().expect("2_q != 0");
            let nu3 = &shared * &(&nine * &t4).recip().expect("4_q != 0");
            let nu4 = &sq(&(&t4 - &int(4))) * &(&nine * &sq(&t4)).recip().expect("4_q != 0");
            Some(vec![zero, one, nu1, nu2, nu3, nu4])
        }
        _ => None,
    }
}

/// The deduplicated expected root set at this q, in first-occurrence order.
pub fn expected_root_set(level: usize, q: &QValue) -> Option<Vec<Rational>> {
    let formulas = expected_root_formulas(level, q)?;
    let mut set: Vec<Rational> = Vec::with_capacity(formulas.len());
    for v in formulas {
        if !set.contains(&v) {
            set.push(v);
        }
    }
    Some(set)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootVerdict {
    /// Root set and degree both match the published system exactly.
    Match,
    Mismatch,
    /// No published system for this level.
    NotAsserted,
}

impl RootVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            RootVerdict::Match => "match",
            RootVerdict::Mismatch => "mismatch",
            RootVerdict::NotAsserted => "not-asserted",
        }
    }
}

/// Exact conformance check: the polynomial matches the published system iff
/// its degree equals the number of distinct expected values and every one of
/// them annihilates it (a monic polynomial of degree k with k distinct roots
/// is their product).
pub fn root_conformance<F: Field>(
    field: &F,
    m: &MonicPolynomial<F>,
    level: usize,
    q: &QValue,
) -> crate::error::Result<RootVerdict> {
    let Some(expected) = expected_root_set(level, q) else {
        return Ok(RootVerdict::NotAsserted);
    };
    let mut images = Vec::with_capacity(expected.len());
    for v in &expected {
        images.push(field.from_rational(v)?);
    }
    // Dedup again after mapping: distinct rationals can collide mod p.
    let mut distinct: Vec<F::Elem> = Vec::with_capacity(images.len());
    for v in images {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let matches = m.degree() == distinct.len()
        && distinct.iter().all(|v| field.is_zero(&m.evaluate(v)));
    Ok(if matches { RootVerdict::Match } else { RootVerdict::Mismatch })
}
