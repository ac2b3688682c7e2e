//! Large prime fields: the acceleration backend. Authoritative answers come
//! from the rationals; prime-field runs serve as fast cross-checks and as
//! the modular layer inside the exact rational matrix kernels.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::{BigInt, Sign};
use num::Signed;

use super::{Field, Rational};
use crate::error::{Error, Result};

/// Deterministic Miller-Rabin, valid for every u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// a⁻¹ mod p for prime p and a ≠ 0 mod p.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat works and avoids signed bookkeeping.
    pow_mod(a, p - 2, p)
}

/// Deterministic shared sequence of 62-bit primes used for modular kernels
/// and default multi-prime runs. Index i always yields the same prime.
pub fn prime_sequence(index: usize) -> u64 {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let lock = PRIMES.get_or_init(|| Mutex::new(Vec::new()));
    let mut primes = lock.lock().unwrap();
    // Descend from just under 2^62 so every prime has full width.
    let mut candidate = primes.last().map(|p| p - 2).unwrap_or((1u64 << 62) - 1);
    while primes.len() <= index {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        primes.push(candidate);
        candidate -= 2;
    }
    primes[index]
}

/// Residue mod p of a big integer, by folding 64-bit digits.
pub(crate) fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let shift = ((1u128 << 64) % p as u128) as u64; // 2^64 mod p
    let mut acc = 0u64;
    for digit in x.magnitude().iter_u64_digits().rev() {
        acc = mul_mod(acc, shift, p);
        acc = (acc as u128 + (digit % p) as u128).rem_euclid(p as u128) as u64;
    }
    if x.sign() == Sign::Minus && acc != 0 {
        p - acc
    } else {
        acc
    }
}

/// A prime field Z/p with p fixed for the computation session.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// A prime field usable for scalar conversion; `p` must be prime and
    /// below 2⁶² (the arithmetic kernels rely on that headroom for lazy
    /// reduction in u128 accumulators).
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::invalid(format!("modulus {p} exceeds 2^62")));
        }
        if !is_prime_u64(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    /// A prime field usable as a computation backend. On top of primality
    /// this demands p > 2³⁰ so that bad-prime collisions stay detectable by
    /// multi-prime agreement.
    pub fn new_backend(p: u64) -> Result<Self> {
        let field = Self::new(p)?;
        if p <= 1 << 30 {
            return Err(Error::invalid(format!(
                "backend prime must exceed 2^30, got {p}"
            )));
        }
        Ok(field)
    }

    pub(crate) fn new_unchecked(p: u64) -> Self {
        debug_assert!(is_prime_u64(p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b; // p < 2^63, no overflow
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::invalid("division by zero"));
        }
        Ok(inv_mod(*a, self.p))
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn from_rational(&self, r: &Rational) -> Result<u64> {
        let den = bigint_mod_u64(r.denom(), self.p);
        if den == 0 {
            return Err(Error::BadPrime {
                prime: self.p,
                reason: format!("denominator of {r} vanishes mod {}", self.p),
            });
        }
        let num = bigint_mod_u64(r.numer(), self.p);
        Ok(mul_mod(num, inv_mod(den, self.p), self.p))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn bit_size(&self, a: &u64) -> u64 {
        64 - a.leading_zeros() as u64
    }

    fn name(&self) -> String {
        format!("prime:{}", self.p)
    }

    fn matmul(&self, ar: usize, ac: usize, a: &[u64], bc: usize, b: &[u64]) -> Vec<u64> {
        matmul_mod(self.p, ar, ac, a, bc, b)
    }
}

/// Row-parallel modular matrix product with lazy reduction: products of two
/// 62-bit residues fit in 124 bits, so eight of them accumulate in a u128
/// before a reduction sweep is needed.
pub(crate) fn matmul_mod(p: u64, ar: usize, ac: usize, a: &[u64], bc: usize, b: &[u64]) -> Vec<u64> {
    use rayon::prelude::*;

    debug_assert_eq!(a.len(), ar * ac);
    debug_assert_eq!(b.len(), ac * bc);
    let mut out = vec![0u64; ar * bc];
    out.par_chunks_mut(bc)
        .enumerate()
        .for_each(|(i, out_row)| {
            let mut acc = vec![0u128; bc];
            for (steps, k) in (0..ac).enumerate() {
                let aik = a[i * ac + k];
                if aik != 0 {
                    let brow = &b[k * bc..(k + 1) * bc];
                    for (s, &bv) in acc.iter_mut().zip(brow) {
                        *s += aik as u128 * bv as u128;
                    }
                }
                if steps % 8 == 7 {
                    for s in acc.iter_mut() {
                        *s %= p as u128;
                    }
                }
            }
            for (o, s) in out_row.iter_mut().zip(acc) {
                *o = (s % p as u128) as u64;
            }
        });
    out
}

/// An element of Z/p carrying its modulus: the scalar-level view of the
/// prime-field backend, as produced by [`super::to_prime_field`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeFieldScalar {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldScalar {
    pub fn new(residue: u64, modulus: u64) -> Self {
        debug_assert!(residue < modulus);
        PrimeFieldScalar { residue, modulus }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(mul_mod(self.residue, other.residue, self.modulus), self.modulus))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let field = PrimeField::new_unchecked(self.modulus);
        Ok(Self::new(field.add(&self.residue, &other.residue), self.modulus))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::FieldMismatch(format!(
                "moduli differ: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PrimeFieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// Incremental CRT lift: the unique x in [0, M), M = Πpᵢ, with the given
/// residues modulo the pairwise distinct primes. Returns (x, M).
pub(crate) fn crt_nonneg(residues: &[u64], primes: &[u64]) -> (BigInt, BigInt) {
    debug_assert_eq!(residues.len(), primes.len());
    let mut x = BigInt::from(residues[0]);
    let mut m = BigInt::from(primes[0]);
    for i in 1..primes.len() {
        let p = primes[i];
        let x_mod = bigint_mod_u64(&x, p);
        let m_mod = bigint_mod_u64(&m, p);
        let field = PrimeField::new_unchecked(p);
        let t = field.mul(&field.sub(&residues[i], &x_mod), &inv_mod(m_mod, p));
        x += &m * BigInt::from(t);
        m *= BigInt::from(p);
    }
    (x, m)
}

/// Symmetric-range CRT lift: reconstruct the integer x with |x| ≤ M/2.
/// Used by the exact rational matrix kernel.
pub(crate) fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let (mut x, m) = crt_nonneg(residues, primes);
    let half = &m >> 1;
    if x.abs() > half {
        x -= &m;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_known_values() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(101));
        assert!(is_prime_u64((1 << 31) - 1)); // Mersenne M31
        assert!(is_prime_u64(2305843009213693951)); // Mersenne M61
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn prime_sequence_is_prime_and_descending() {
        let p0 = prime_sequence(0);
        let p1 = prime_sequence(1);
        let p5 = prime_sequence(5);
        assert!(is_prime_u64(p0) && is_prime_u64(p1) && is_prime_u64(p5));
        assert!(p0 > p1 && p1 > p5);
        assert!(p5 > 1 << 61);
        assert_eq!(p0, prime_sequence(0));
    }

    #[test]
    fn backend_requires_large_prime() {
        assert!(PrimeField::new_backend(101).is_err());
        assert!(PrimeField::new_backend((1 << 31) - 1).is_ok());
        assert!(PrimeField::new_backend((1 << 31) - 2).is_err());
    }

    #[test]
    fn field_arithmetic_mod_p() {
        let f = PrimeField::new_unchecked(101);
        let a = 52u64; // 3/2 mod 101
        assert_eq!(f.mul(&a, &f.from_i64(2)), 3);
        assert_eq!(f.add(&a, &f.neg(&a)), 0);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        assert_eq!(f.from_i64(-1), 100);
    }

    #[test]
    fn bigint_mod_folding() {
        let p = prime_sequence(0);
        let x = BigInt::parse_bytes(b"123456789012345678901234567890123456789", 10).unwrap();
        let direct = (&x % BigInt::from(p)).to_string().parse::<u64>().unwrap();
        assert_eq!(bigint_mod_u64(&x, p), direct);
        assert_eq!(bigint_mod_u64(&(-&x), p), p - direct);
        assert_eq!(bigint_mod_u64(&BigInt::from(0), p), 0);
    }

    #[test]
    fn crt_round_trip() {
        let primes = [prime_sequence(0), prime_sequence(1), prime_sequence(2)];
        for value in [
            BigInt::from(0),
            BigInt::from(42),
            BigInt::from(-42),
            BigInt::parse_bytes(b"-98765432109876543210987654321", 10).unwrap(),
        ] {
            let residues: Vec<u64> = primes.iter().map(|&p| bigint_mod_u64(&value, p)).collect();
            assert_eq!(crt_symmetric(&residues, &primes), value);
        }
    }

    #[test]
    fn modular_matmul_matches_naive() {
        let p = prime_sequence(0);
        let f = PrimeField::new_unchecked(p);
        let n = 17;
        let a: Vec<u64> = (0..n * n).map(|i| (i as u64 * 2654435761 + 7) % p).collect();
        let b: Vec<u64> = (0..n * n).map(|i| (i as u64 * 40503 + 11) % p).collect();
        let fast = matmul_mod(p, n, n, &a, n, &b);
        let mut naive = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    naive[i * n + j] =
                        f.add(&naive[i * n + j], &mul_mod(a[i * n + k], b[k * n + j], p));
                }
            }
        }
        assert_eq!(fast, naive);
    }
}
