//! Exact dense matrix product over the rationals.
//!
//! Strategy: clear denominators (per row of the left factor, per column of
//! the right), multiply the resulting integer matrices, then divide back and
//! reduce. The integer product runs on one of two kernels:
//!
//!   * numerators small enough → native i64 entries with i128 accumulators;
//!   * otherwise → residues modulo enough 62-bit primes to cover an a-priori
//!     entry bound, recombined by symmetric CRT. This is exact integer
//!     arithmetic (the bound guarantees the lift is the true value), not a
//!     probabilistic shortcut.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::prime::{bigint_mod_u64, crt_symmetric, matmul_mod, prime_sequence};
use super::rational::Rational;
use num::rational::BigRational;

/// `a` is ar×ac, `b` is ac×bc, both row-major; returns the exact ar×bc product.
pub fn matmul(ar: usize, ac: usize, a: &[Rational], bc: usize, b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), ar * ac);
    assert_eq!(b.len(), ac * bc);
    if ar == 0 || ac == 0 || bc == 0 {
        return vec![Rational::zero(); ar * bc];
    }

    // Per-row denominators for a, per-column for b.
    let (a_int, a_den) = clear_denominators_rows(ar, ac, a);
    let (b_int, b_den) = clear_denominators_cols(ac, bc, b);

    let a_bits = max_bits(&a_int);
    let b_bits = max_bits(&b_int);
    let inner_bits = usize::BITS - ac.leading_zeros(); // ceil log2(ac) + 1 slack

    let int_product: Vec<BigInt> = if a_bits <= 62
        && b_bits <= 62
        && a_bits + b_bits + inner_bits as u64 + 1 <= 126
    {
        matmul_i128(ar, ac, &a_int, bc, &b_int)
    } else {
        matmul_crt(ar, ac, &a_int, bc, &b_int, a_bits + b_bits + inner_bits as u64 + 1)
    };

    // Divide entry (i, j) by a_den[i] · b_den[j].
    int_product
        .par_chunks(bc)
        .enumerate()
        .flat_map_iter(|(i, row)| {
            let di = &a_den[i];
            let b_den = &b_den;
            row.iter()
                .enumerate()
                .map(move |(j, num)| {
                    Rational::from_inner(BigRational::new(num.clone(), di * &b_den[j]))
                })
        })
        .collect()
}

fn clear_denominators_rows(rows: usize, cols: usize, m: &[Rational]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut dens = Vec::with_capacity(rows);
    let mut ints = vec![BigInt::zero(); rows * cols];
    for i in 0..rows {
        let row = &m[i * cols..(i + 1) * cols];
        let mut l = BigInt::one();
        for x in row {
            if !x.is_zero() {
                l = l.lcm(x.denom());
            }
        }
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                ints[i * cols + j] = x.numer() * (&l / x.denom());
            }
        }
        dens.push(l);
    }
    (ints, dens)
}

fn clear_denominators_cols(rows: usize, cols: usize, m: &[Rational]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut dens = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut l = BigInt::one();
        for i in 0..rows {
            let x = &m[i * cols + j];
            if !x.is_zero() {
                l = l.lcm(x.denom());
            }
        }
        dens.push(l);
    }
    let mut ints = vec![BigInt::zero(); rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let x = &m[i * cols + j];
            if !x.is_zero() {
                ints[i * cols + j] = x.numer() * (&dens[j] / x.denom());
            }
        }
    }
    (ints, dens)
}

fn max_bits(m: &[BigInt]) -> u64 {
    m.iter().map(|x| x.bits()).max().unwrap_or(0)
}

fn matmul_i128(ar: usize, ac: usize, a: &[BigInt], bc: usize, b: &[BigInt]) -> Vec<BigInt> {
    let a64: Vec<i64> = a.iter().map(|x| x.to_i64().expect("fits i64")).collect();
    let b64: Vec<i64> = b.iter().map(|x| x.to_i64().expect("fits i64")).collect();
    let mut out = vec![BigInt::zero(); ar * bc];
    out.par_chunks_mut(bc).enumerate().for_each(|(i, out_row)| {
        let mut acc = vec![0i128; bc];
        for k in 0..ac {
            let aik = a64[i * ac + k];
            if aik != 0 {
                let brow = &b64[k * bc..(k + 1) * bc];
                for (s, &bv) in acc.iter_mut().zip(brow) {
                    *s += aik as i128 * bv as i128;
                }
            }
        }
        for (o, s) in out_row.iter_mut().zip(acc) {
            *o = BigInt::from(s);
        }
    });
    out
}

fn matmul_crt(
    ar: usize,
    ac: usize,
    a: &[BigInt],
    bc: usize,
    b: &[BigInt],
    bound_bits: u64,
) -> Vec<BigInt> {
    // Need Πpᵢ > 2^(bound_bits + 1) to cover the symmetric range.
    let mut primes = Vec::new();
    let mut covered = 0u64;
    let mut idx = 0;
    while covered <= bound_bits + 1 {
        let p = prime_sequence(idx);
        idx += 1;
        primes.push(p);
        covered += 63 - p.leading_zeros() as u64; // floor(log2 p)
    }

    let residue_products: Vec<Vec<u64>> = primes
        .iter()
        .map(|&p| {
            let a_mod: Vec<u64> = a.par_iter().map(|x| bigint_mod_u64(x, p)).collect();
            let b_mod: Vec<u64> = b.par_iter().map(|x| bigint_mod_u64(x, p)).collect();
            matmul_mod(p, ar, ac, &a_mod, bc, &b_mod)
        })
        .collect();

    (0..ar * bc)
        .into_par_iter()
        .map(|e| {
            let residues: Vec<u64> = residue_products.iter().map(|m| m[e]).collect();
            crt_symmetric(&residues, &primes)
        })
        .collect()
}

/// Rescale a rational row in place to the primitive integer form: clear
/// denominators, divide by the content, make the first nonzero entry
/// positive. Keeps elimination rows from growing.
pub fn normalize_row_primitive(row: &mut [Rational]) {
    let mut l = BigInt::one();
    for x in row.iter() {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&l / x.denom())
            }
        })
        .collect();
    let mut content = BigInt::zero();
    for x in &ints {
        if !x.is_zero() {
            content = content.gcd(x);
            if content.is_one() {
                break;
            }
        }
    }
    if content.is_zero() {
        return; // all-zero row
    }
    let negate = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if negate {
        content = -content;
    }
    for (slot, x) in row.iter_mut().zip(ints.iter_mut()) {
        if !x.is_zero() {
            *slot = Rational::from_inner(BigRational::from_integer(&*x / &content));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(ar: usize, ac: usize, a: &[Rational], bc: usize, b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); ar * bc];
        for i in 0..ar {
            for k in 0..ac {
                for j in 0..bc {
                    out[i * bc + j] = &out[i * bc + j] + &(&a[i * ac + k] * &b[k * bc + j]);
                }
            }
        }
        out
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_integers(n, d).unwrap()
    }

    #[test]
    fn small_product_exact() {
        let a = vec![rat(1, 2), rat(-3, 4), rat(0, 1), rat(5, 6)];
        let b = vec![rat(2, 3), rat(1, 7), rat(4, 5), rat(-1, 2)];
        assert_eq!(matmul(2, 2, &a, 2, &b), naive(2, 2, &a, 2, &b));
    }

    #[test]
    fn big_entries_take_crt_path() {
        // Entries around 2^80 force the CRT kernel.
        let big = Rational::parse("1208925819614629174706176/7").unwrap(); // 2^80 / 7
        let a = vec![big.clone(), rat(1, 3), rat(-2, 5), big.clone()];
        let b = vec![rat(1, 2), big.clone(), big.clone(), rat(3, 11)];
        assert_eq!(matmul(2, 2, &a, 2, &b), naive(2, 2, &a, 2, &b));
    }

    #[test]
    fn rectangular_shapes() {
        let a: Vec<Rational> = (0..6).map(|i| rat(i - 3, 1 + (i % 3))).collect(); // 2x3
        let b: Vec<Rational> = (0..12).map(|i| rat(2 * i + 1, 1 + (i % 4))).collect(); // 3x4
        assert_eq!(matmul(2, 3, &a, 4, &b), naive(2, 3, &a, 4, &b));
    }

    #[test]
    fn normalize_row_makes_primitive() {
        let mut row = vec![rat(-2, 3), rat(4, 9), rat(0, 1)];
        normalize_row_primitive(&mut row);
        assert_eq!(row, vec![rat(3, 1), rat(-2, 1), rat(0, 1)]);
        let mut zero_row = vec![Rational::zero(); 3];
        normalize_row_primitive(&mut zero_row);
        assert_eq!(zero_row, vec![Rational::zero(); 3]);
    }

    proptest! {
        #[test]
        fn matches_naive_product(
            ar in 1usize..5, ac in 1usize..5, bc in 1usize..5,
            nums in proptest::collection::vec(-50i64..50, 50),
            dens in proptest::collection::vec(1i64..20, 50),
        ) {
            let a: Vec<Rational> = (0..ar * ac).map(|i| rat(nums[i], dens[i])).collect();
            let b: Vec<Rational> = (0..ac * bc)
                .map(|i| rat(nums[i + ar * ac], dens[i + ar * ac]))
                .collect();
            prop_assert_eq!(matmul(ar, ac, &a, bc, &b), naive(ar, ac, &a, bc, &b));
        }
    }
}
