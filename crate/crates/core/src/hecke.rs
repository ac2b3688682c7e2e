//! Hecke symmetries: invertible operators R on V⊗V satisfying the braid
//! relation R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃ together with the quadratic condition
//! (R − qI)(R + q⁻¹I) = 0.
//!
//! Built-ins cover the classical flip (q = 1), graded super-flips, and the
//! standard GL_q(N) braiding; anything else enters through the matrix file
//! format and is validated on load. A `HeckeSymmetry` value can only be
//! obtained through validation, so downstream code never sees an unchecked R.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, LaurentPolynomial, QValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeSource {
    Flip,
    /// Graded flip with `even` + `odd` = N; the first `even` basis vectors
    /// carry degree 0, the rest degree 1.
    SuperFlip { even: usize, odd: usize },
    StandardGlq,
    File { path: String },
}

impl HeckeSource {
    pub fn label(&self) -> String {
        match self {
            HeckeSource::Flip => "flip".into(),
            HeckeSource::SuperFlip { even, odd } => format!("superflip({even}|{odd})"),
            HeckeSource::StandardGlq => "glq".into(),
            HeckeSource::File { path } => format!("file:{path}"),
        }
    }
}

/// A validated braiding with its Hecke parameter.
#[derive(Clone, Debug)]
pub struct HeckeSymmetry<F: Field> {
    n: usize,
    q: QValue,
    matrix: SquareMatrix<F>,
    source: HeckeSource,
}

impl<F: Field> HeckeSymmetry<F> {
    /// Validate a candidate R (braid relation first, then the Hecke
    /// condition) and wrap it. The only way to construct a value.
    pub fn validated(
        matrix: SquareMatrix<F>,
        n: usize,
        q: QValue,
        source: HeckeSource,
    ) -> Result<Self> {
        if matrix.dim() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "R must act on V⊗V: expected dim {}, got {}",
                n * n,
                matrix.dim()
            )));
        }
        let braid = validate_braid(&matrix, n)?;
        if !braid.exact_zero {
            let (row, col) = braid.first_nonzero.unwrap();
            return Err(Error::BraidValidation { row, col });
        }
        let q_elem = matrix.field().from_rational(q.rational())?;
        let hecke = validate_hecke(&matrix, &q_elem)?;
        if !hecke.exact_zero {
            let (row, col) = hecke.first_nonzero.unwrap();
            return Err(Error::HeckeValidation { q: q.to_string(), row, col });
        }
        Ok(HeckeSymmetry { n, q, matrix, source })
    }

    /// Dimension N of the underlying space V.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &QValue {
        &self.q
    }

    pub fn matrix(&self) -> &SquareMatrix<F> {
        &self.matrix
    }

    pub fn source(&self) -> &HeckeSource {
        &self.source
    }

    pub fn field(&self) -> &F {
        self.matrix.field()
    }

    /// R⁻¹ = R − (q − q⁻¹)I, free by the Hecke condition.
    pub fn inverse_matrix(&self) -> Result<SquareMatrix<F>> {
        let field = self.matrix.field();
        let q_elem = field.from_rational(self.q.rational())?;
        let shift = field.sub(&field.inv(&q_elem)?, &q_elem); // q⁻¹ − q
        let mut inv = self.matrix.clone();
        inv.add_scaled_identity(&shift);
        Ok(inv)
    }
}

/// Outcome of an exact residual check.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub exact_zero: bool,
    /// First nonzero residual entry in row-major order.
    pub first_nonzero: Option<(usize, usize)>,
    /// Residual entry of maximal bit size: (row, col, bits).
    pub max_bits_entry: Option<(usize, usize, u64)>,
}

fn residual_report<F: Field>(residual: &SquareMatrix<F>) -> ResidualReport {
    let field = residual.field();
    let dim = residual.dim();
    let mut first = None;
    let mut max_bits: Option<(usize, usize, u64)> = None;
    for i in 0..dim {
        for j in 0..dim {
            let x = residual.get(i, j);
            if field.is_zero(x) {
                continue;
            }
            if first.is_none() {
                first = Some((i, j));
            }
            let bits = field.bit_size(x);
            if max_bits.map_or(true, |(_, _, b)| bits > b) {
                max_bits = Some((i, j, bits));
            }
        }
    }
    ResidualReport { exact_zero: first.is_none(), first_nonzero: first, max_bits_entry: max_bits }
}

/// Check R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃ on V⊗³ exactly.
pub fn validate_braid<F: Field>(r: &SquareMatrix<F>, n: usize) -> Result<ResidualReport> {
    if r.dim() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "braid validation: R has dim {}, expected {}",
            r.dim(),
            n * n
        )));
    }
    let r12 = r.embed(1, 3, n)?;
    let r23 = r.embed(2, 3, n)?;
    let lhs = r12.multiply(&r23)?.multiply(&r12)?;
    let rhs = r23.multiply(&r12)?.multiply(&r23)?;
    Ok(residual_report(&lhs.sub(&rhs)?))
}

/// Check (R − qI)(R + q⁻¹I) = 0 exactly.
pub fn validate_hecke<F: Field>(r: &SquareMatrix<F>, q: &F::Elem) -> Result<ResidualReport> {
    let field = r.field();
    if field.is_zero(q) {
        return Err(Error::invalid("hecke validation requires q != 0"));
    }
    let mut minus_q = r.clone();
    minus_q.add_scaled_identity(&field.neg(q));
    let mut plus_qinv = r.clone();
    plus_qinv.add_scaled_identity(&field.inv(q)?);
    Ok(residual_report(&minus_q.multiply(&plus_qinv)?))
}

/// The flip matrix on V⊗V, unvalidated.
pub fn flip_matrix<F: Field>(field: &F, n: usize) -> SquareMatrix<F> {
    SquareMatrix::from_fn(field.clone(), n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        if i == l && j == k {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// The classical flip P(x⊗y) = y⊗x at q = 1.
pub fn flip<F: Field>(field: &F, n: usize) -> Result<HeckeSymmetry<F>> {
    if n == 0 {
        return Err(Error::invalid("flip requires N >= 1"));
    }
    HeckeSymmetry::validated(flip_matrix(field, n), n, QValue::one(), HeckeSource::Flip)
}

/// The graded flip matrix, unvalidated. The first `even` basis directions
/// carry degree 0, the remaining `odd` carry degree 1.
pub fn super_flip_matrix<F: Field>(field: &F, even: usize, odd: usize) -> SquareMatrix<F> {
    let n = even + odd;
    let grade = |i: usize| usize::from(i >= even);
    SquareMatrix::from_fn(field.clone(), n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        if i == l && j == k {
            if grade(k) * grade(l) == 1 {
                field.neg(&field.one())
            } else {
                field.one()
            }
        } else {
            field.zero()
        }
    })
}

/// The graded flip P(x⊗y) = (−1)^|x||y| y⊗x, still at q = 1.
pub fn super_flip<F: Field>(field: &F, even: usize, odd: usize) -> Result<HeckeSymmetry<F>> {
    let n = even + odd;
    if n == 0 {
        return Err(Error::invalid("super flip requires m + n >= 1"));
    }
    HeckeSymmetry::validated(
        super_flip_matrix(field, even, odd),
        n,
        QValue::one(),
        HeckeSource::SuperFlip { even, odd },
    )
}

/// Symbolic entries of the standard GL_q(N) braiding as Laurent polynomials:
/// q on aligned diagonal pairs, 1 on swapped pairs, q − q⁻¹ above the
/// diagonal. Eigenvalues are q and −q⁻¹, and q = 1 recovers the flip.
pub fn standard_glq_laurent(n: usize) -> Vec<Vec<LaurentPolynomial>> {
    let dim = n * n;
    let mut rows = vec![vec![LaurentPolynomial::zero(); dim]; dim];
    let one = Rational::one();
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j; // acts on e_i ⊗ e_j
            if i == j {
                rows[col][col] = LaurentPolynomial::monomial(1, one.clone());
            } else {
                // e_i ⊗ e_j -> e_j ⊗ e_i (+ (q − q⁻¹) e_i ⊗ e_j when i < j)
                rows[j * n + i][col] = LaurentPolynomial::one();
                if i < j {
                    let mut c = LaurentPolynomial::monomial(1, one.clone());
                    c.add_term(-1, &Rational::from_i64(-1));
                    rows[col][col] = c;
                }
            }
        }
    }
    rows
}

/// The standard GL_q(N) braiding evaluated at a concrete q, unvalidated.
pub fn standard_glq_matrix<F: Field>(field: &F, n: usize, q: &QValue) -> Result<SquareMatrix<F>> {
    let laurent = standard_glq_laurent(n);
    let q_elem = field.from_rational(q.rational())?;
    let dim = n * n;
    let mut entries = Vec::with_capacity(dim * dim);
    for row in &laurent {
        for cell in row {
            entries.push(cell.evaluate_in(field, &q_elem)?);
        }
    }
    SquareMatrix::from_entries(field.clone(), dim, entries)
}

/// The standard GL_q(N) Hecke symmetry evaluated at a concrete q.
pub fn standard_glq<F: Field>(field: &F, n: usize, q: &QValue) -> Result<HeckeSymmetry<F>> {
    if n == 0 {
        return Err(Error::invalid("standard_glq requires N >= 1"));
    }
    let matrix = standard_glq_matrix(field, n, q)?;
    HeckeSymmetry::validated(matrix, n, q.clone(), HeckeSource::StandardGlq)
}

/// Load a user-supplied R-matrix from the qma-matrix-v1 file format,
/// evaluate it at the declared q and validate it.
pub fn load_hecke<F: Field>(field: &F, path: &str) -> Result<HeckeSymmetry<F>> {
    let file = crate::matfile::MatrixFile::read(path)?;
    let n = crate::matfile::leg_dimension(file.size)?;
    let matrix = file.evaluate_in(field)?;
    HeckeSymmetry::validated(
        matrix,
        n,
        file.q.clone(),
        HeckeSource::File { path: path.to_owned() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};

    fn q(s: &str) -> QValue {
        QValue::parse(s).unwrap()
    }

    #[test]
    fn flip_smallest_cases() {
        let h = flip(&Rationals, 1).unwrap();
        assert_eq!(h.matrix().dim(), 1);
        assert_eq!(h.matrix().get(0, 0), &Rational::one());

        let h = flip(&Rationals, 2).unwrap();
        let m = h.matrix();
        assert_eq!(m.multiply(m).unwrap(), SquareMatrix::identity(Rationals, 4));
    }

    #[test]
    fn flip_fails_hecke_at_generic_q() {
        let h = flip(&Rationals, 2).unwrap();
        let report = validate_hecke(h.matrix(), q("3/2").rational()).unwrap();
        assert!(!report.exact_zero);
        assert!(report.max_bits_entry.is_some());
    }

    #[test]
    fn super_flip_matches_flip_without_odd_directions() {
        let s = super_flip(&Rationals, 3, 0).unwrap();
        let f = flip(&Rationals, 3).unwrap();
        assert_eq!(s.matrix(), f.matrix());
    }

    #[test]
    fn super_flip_sign_structure() {
        let s = super_flip(&Rationals, 1, 1).unwrap();
        let m = s.matrix();
        // odd⊗odd basis vector e₁⊗e₁ sits at index 3.
        assert_eq!(m.get(3, 3), &Rational::from_i64(-1));
        assert_eq!(m.multiply(m).unwrap(), SquareMatrix::identity(Rationals, 4));
    }

    #[test]
    fn super_flip_gradings_validate() {
        for (even, odd) in [(1usize, 1usize), (2, 1), (1, 2)] {
            let s = super_flip(&Rationals, even, odd).unwrap();
            assert_eq!(s.matrix().dim(), (even + odd).pow(2));
        }
    }

    #[test]
    fn standard_glq_n1_is_scalar_q() {
        let h = standard_glq(&Rationals, 1, &q("3/2")).unwrap();
        assert_eq!(h.matrix().get(0, 0), &Rational::parse("3/2").unwrap());
    }

    #[test]
    fn standard_glq_degenerates_to_flip_at_q1() {
        for n in 1..=3 {
            let g = standard_glq(&Rationals, n, &q("1")).unwrap();
            let f = flip(&Rationals, n).unwrap();
            assert_eq!(g.matrix(), f.matrix());
        }
    }

    #[test]
    fn standard_glq_validates_for_test_parameters() {
        for n in [2usize, 3] {
            for qs in ["3/2", "7/5"] {
                let h = standard_glq(&Rationals, n, &q(qs)).unwrap();
                assert_eq!(h.matrix().dim(), n * n);
            }
        }
    }

    #[test]
    fn standard_glq_minimal_polynomial_is_hecke_quadratic() {
        // (x − q)(x + q⁻¹) exactly, for N ≥ 2.
        let h = standard_glq(&Rationals, 2, &q("3/2")).unwrap();
        let mp = h.matrix().minimal_polynomial().unwrap();
        let expected = crate::poly::MonicPolynomial::from_roots(
            Rationals,
            &[Rational::parse("3/2").unwrap(), Rational::parse("-2/3").unwrap()],
        );
        assert_eq!(mp, expected);
    }

    #[test]
    fn inverse_matrix_is_exact() {
        let h = standard_glq(&Rationals, 2, &q("7/5")).unwrap();
        let inv = h.inverse_matrix().unwrap();
        assert_eq!(
            h.matrix().multiply(&inv).unwrap(),
            SquareMatrix::identity(Rationals, 4)
        );
    }

    #[test]
    fn scalar_multiples_of_identity_braid() {
        let two_i = SquareMatrix::identity(Rationals, 4).scale(&Rational::from_i64(2));
        let report = validate_braid(&two_i, 2).unwrap();
        assert!(report.exact_zero);
    }

    #[test]
    fn validators_work_in_prime_fields() {
        let pf = PrimeField::new((1 << 31) - 1).unwrap();
        let h = standard_glq(&pf, 2, &q("3/2")).unwrap();
        assert_eq!(h.matrix().dim(), 4);
        let f = flip(&pf, 3).unwrap();
        assert_eq!(f.matrix().dim(), 9);
    }

    #[test]
    fn validated_rejects_wrong_q() {
        let f = flip(&Rationals, 2).unwrap();
        let err = HeckeSymmetry::validated(
            f.matrix().clone(),
            2,
            q("3/2"),
            HeckeSource::Flip,
        )
        .unwrap_err();
        assert!(matches!(err, Error::HeckeValidation { .. }));
    }

    #[test]
    fn validated_rejects_braid_breakage() {
        let mut m = flip(&Rationals, 2).unwrap().matrix().clone();
        m.set(0, 1, Rational::from_i64(1)); // perturb one off-diagonal entry
        let report = validate_braid(&m, 2).unwrap();
        assert!(!report.exact_zero);
        let err = HeckeSymmetry::validated(m, 2, q("1"), HeckeSource::Flip).unwrap_err();
        assert!(matches!(err, Error::BraidValidation { .. }));
    }
}
