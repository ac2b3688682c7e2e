//! Dense square matrices over an abstract exact field.
//!
//! Everything here is exact: products, Kronecker products, tensor-leg
//! embeddings, rank by incremental elimination, minimal polynomials by
//! detecting the first linear dependence among vectorized powers.

pub mod echelon;
pub mod minpoly;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{MonicPolynomial, Polynomial};
use crate::scalar::{Field, Rational, Rationals};

#[derive(Clone, Debug)]
pub struct SquareMatrix<F: Field> {
    field: F,
    dim: usize,
    entries: Vec<F::Elem>, // row-major
}

impl<F: Field> PartialEq for SquareMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.entries == other.entries
    }
}

impl<F: Field> SquareMatrix<F> {
    pub fn from_entries(field: F, dim: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(SquareMatrix { field, dim, entries })
    }

    pub fn from_fn(field: F, dim: usize, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { field, dim, entries }
    }

    pub fn zeros(field: F, dim: usize) -> Self {
        let z = field.zero();
        SquareMatrix { field, dim, entries: vec![z; dim * dim] }
    }

    pub fn identity(field: F, dim: usize) -> Self {
        let mut m = Self::zeros(field, dim);
        for i in 0..dim {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &F::Elem {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: F::Elem) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| self.field.is_zero(x))
    }

    fn check_same(&self, other: &Self, op: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{op}: operand fields differ")));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    /// Exact matrix product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "multiply")?;
        let entries = self
            .field
            .matmul(self.dim, self.dim, &self.entries, other.dim, &other.entries);
        Ok(SquareMatrix { field: self.field.clone(), dim: self.dim, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(SquareMatrix { field: self.field.clone(), dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(SquareMatrix { field: self.field.clone(), dim: self.dim, entries })
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|a| self.field.mul(a, s)).collect();
        SquareMatrix { field: self.field.clone(), dim: self.dim, entries }
    }

    /// self + s·I, in place.
    pub fn add_scaled_identity(&mut self, s: &F::Elem) {
        for i in 0..self.dim {
            let v = self.field.add(self.get(i, i), s);
            self.set(i, i, v);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> F::Elem {
        let mut acc = self.field.zero();
        for i in 0..self.dim {
            acc = self.field.add(&acc, self.get(i, i));
        }
        acc
    }

    /// Kronecker product: `(self ⊗ other)[(i·dB+k), (j·dB+l)] = self[i,j]·other[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "kron: operand fields differ");
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let field = self.field.clone();
        let zero = field.zero();
        let mut entries = vec![zero; dim * dim];
        entries
            .par_chunks_mut(dim)
            .enumerate()
            .for_each(|(row, out_row)| {
                let (i, k) = (row / db, row % db);
                for j in 0..da {
                    let a = self.get(i, j);
                    if field.is_zero(a) {
                        continue;
                    }
                    for l in 0..db {
                        let b = other.get(k, l);
                        if !field.is_zero(b) {
                            out_row[j * db + l] = field.mul(a, b);
                        }
                    }
                }
            });
        SquareMatrix { field: self.field.clone(), dim, entries }
    }

    /// Place `self` on tensor legs `start .. start+k-1` (1-based) of a chain
    /// of `total_legs` legs each of dimension `leg_dim`:
    /// `I^(start-1) ⊗ self ⊗ I^(total_legs-start-k+1)`.
    pub fn embed(&self, start: usize, total_legs: usize, leg_dim: usize) -> Result<Self> {
        if leg_dim == 0 || start == 0 {
            return Err(Error::invalid("embed: legs are 1-based and leg_dim > 0"));
        }
        // self must span k legs exactly (a 1×1 matrix spans none).
        let k = if self.dim == 1 {
            0
        } else {
            if leg_dim == 1 {
                return Err(Error::invalid(format!(
                    "embed: dim {} is not a power of leg dimension 1",
                    self.dim
                )));
            }
            let mut k = 0usize;
            let mut size = 1usize;
            while size < self.dim {
                size *= leg_dim;
                k += 1;
            }
            if size != self.dim {
                return Err(Error::invalid(format!(
                    "embed: dim {} is not a power of leg dimension {leg_dim}",
                    self.dim
                )));
            }
            k
        };
        if start + k > total_legs + 1 {
            return Err(Error::invalid(format!(
                "embed: legs {start}..{} exceed {total_legs}",
                start + k - 1
            )));
        }
        let left = leg_dim.pow((start - 1) as u32);
        let right = leg_dim.pow((total_legs + 1 - start - k) as u32);
        let id_left = Self::identity(self.field.clone(), left);
        let id_right = Self::identity(self.field.clone(), right);
        Ok(id_left.kron(self).kron(&id_right))
    }

    /// Exact rank via incremental elimination with cheapest-pivot selection.
    pub fn rank(&self) -> usize {
        echelon::rank_of(&self.field, self.dim, self.dim, &self.entries)
    }

    pub fn is_idempotent(&self) -> bool {
        match self.multiply(self) {
            Ok(sq) => sq == *self,
            Err(_) => false,
        }
    }

    /// The unique least-degree monic annihilator, located by feeding
    /// vectorized powers I, M, M², … into an incremental elimination until
    /// the first exact dependence appears.
    pub fn minimal_polynomial(&self) -> Result<MonicPolynomial<F>> {
        let coeffs = self
            .field
            .matrix_minimal_polynomial(self.dim, &self.entries)?;
        MonicPolynomial::new(Polynomial::from_coeffs(self.field.clone(), coeffs))
    }

    /// Solve self · X = rhs exactly by Gauss-Jordan elimination; fails when
    /// self is singular.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs, "solve")?;
        let d = self.dim;
        let f = &self.field;
        let width = 2 * d;
        let mut rows: Vec<Vec<F::Elem>> = (0..d)
            .map(|i| {
                let mut row = Vec::with_capacity(width);
                row.extend_from_slice(&self.entries[i * d..(i + 1) * d]);
                row.extend_from_slice(&rhs.entries[i * d..(i + 1) * d]);
                row
            })
            .collect();
        for col in 0..d {
            let pivot_row = (col..d)
                .filter(|&r| !f.is_zero(&rows[r][col]))
                .min_by_key(|&r| f.bit_size(&rows[r][col]))
                .ok_or_else(|| Error::invalid("solve: matrix is singular"))?;
            rows.swap(col, pivot_row);
            let inv = f.inv(&rows[col][col])?;
            for x in rows[col].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
            let pivot = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || f.is_zero(&row[col]) {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !f.is_zero(p) {
                        *x = f.sub(x, &f.mul(&factor, p));
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(d * d);
        for row in rows {
            out.extend_from_slice(&row[d..]);
        }
        SquareMatrix::from_entries(f.clone(), d, out)
    }

    /// Horner evaluation of a polynomial at this matrix.
    pub fn evaluate_polynomial(&self, p: &Polynomial<F>) -> Result<Self> {
        if p.field() != &self.field {
            return Err(Error::FieldMismatch("evaluate_polynomial".into()));
        }
        let coeffs = p.coeffs();
        if coeffs.is_empty() {
            return Ok(Self::zeros(self.field.clone(), self.dim));
        }
        let mut acc = Self::zeros(self.field.clone(), self.dim);
        acc.add_scaled_identity(&coeffs[coeffs.len() - 1]);
        for c in coeffs.iter().rev().skip(1) {
            acc = acc.multiply(self)?;
            acc.add_scaled_identity(c);
        }
        Ok(acc)
    }
}

impl SquareMatrix<Rationals> {
    /// Image of this matrix in another field (e.g. reduction mod p);
    /// fails on a bad prime.
    pub fn to_field<G: Field>(&self, g: &G) -> Result<SquareMatrix<G>> {
        let entries = self
            .entries
            .iter()
            .map(|x| g.from_rational(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(SquareMatrix { field: g.clone(), dim: self.dim, entries })
    }

    pub fn rational_entries(&self) -> &[Rational] {
        &self.entries
    }
}

/// `(small ⊗ I_k) · big` without materializing the embedding. The row-major
/// buffer of `big` reinterpreted with rows indexed by the first tensor slot
/// is exactly the rectangular product shape, so this is one kernel call.
pub fn kron_left_mul<F: Field>(
    small: &SquareMatrix<F>,
    k: usize,
    big: &SquareMatrix<F>,
) -> Result<SquareMatrix<F>> {
    let s = small.dim;
    let d = big.dim;
    if s * k != d {
        return Err(Error::DimensionMismatch(format!(
            "kron_left_mul: {s}·{k} != {d}"
        )));
    }
    if small.field != big.field {
        return Err(Error::FieldMismatch("kron_left_mul".into()));
    }
    let entries = small
        .field
        .matmul(s, s, &small.entries, k * d, &big.entries);
    Ok(SquareMatrix { field: small.field.clone(), dim: d, entries })
}

/// `(I_k ⊗ small) · big`: block-diagonal action on row blocks.
pub fn kron_right_mul<F: Field>(
    k: usize,
    small: &SquareMatrix<F>,
    big: &SquareMatrix<F>,
) -> Result<SquareMatrix<F>> {
    let s = small.dim;
    let d = big.dim;
    if s * k != d {
        return Err(Error::DimensionMismatch(format!(
            "kron_right_mul: {k}·{s} != {d}"
        )));
    }
    if small.field != big.field {
        return Err(Error::FieldMismatch("kron_right_mul".into()));
    }
    let mut entries = Vec::with_capacity(d * d);
    for block in 0..k {
        let rows = &big.entries[block * s * d..(block + 1) * s * d];
        entries.extend(small.field.matmul(s, s, &small.entries, d, rows));
    }
    Ok(SquareMatrix { field: small.field.clone(), dim: d, entries })
}

/// `big · (small ⊗ I_k)`, via the transpose identity.
pub fn mul_kron_left<F: Field>(
    big: &SquareMatrix<F>,
    small: &SquareMatrix<F>,
    k: usize,
) -> Result<SquareMatrix<F>> {
    Ok(kron_left_mul(&small.transpose(), k, &big.transpose())?.transpose())
}

/// `big · (I_k ⊗ small)`, via the transpose identity.
pub fn mul_kron_right<F: Field>(
    big: &SquareMatrix<F>,
    k: usize,
    small: &SquareMatrix<F>,
) -> Result<SquareMatrix<F>> {
    Ok(kron_right_mul(k, &small.transpose(), &big.transpose())?.transpose())
}
