//! The qma-matrix-v1 file format: a square matrix whose entries are Laurent
//! polynomials in q, together with the declared q value.
//!
//! ```json
//! {
//!   "format": "qma-matrix-v1",
//!   "size": 4,
//!   "q": "3/2",
//!   "entries": [[0, 1, [[0, "1/1"], [2, "-1/3"]]], ...]
//! }
//! ```
//!
//! Indices are 0-based, omitted entries are zero, a duplicate (row, col) is a
//! parse error. The same format carries both symbolic built-ins and matrices
//! already evaluated at a rational q (constant polynomials).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, LaurentPolynomial, QValue, Rational};

pub const FORMAT_NAME: &str = "qma-matrix-v1";

#[derive(Serialize, Deserialize)]
struct RawMatrixFile {
    format: String,
    size: usize,
    q: String,
    entries: Vec<(usize, usize, Vec<(i64, String)>)>,
}

/// A parsed matrix file: size, declared q, and the nonzero Laurent entries.
#[derive(Clone, Debug)]
pub struct MatrixFile {
    pub size: usize,
    pub q: QValue,
    entries: BTreeMap<(usize, usize), LaurentPolynomial>,
}

impl MatrixFile {
    pub fn new(size: usize, q: QValue) -> Self {
        MatrixFile { size, q, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, row: usize, col: usize, poly: LaurentPolynomial) {
        if poly.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), poly);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&LaurentPolynomial> {
        self.entries.get(&(row, col))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawMatrixFile =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("matrix file: {e}")))?;
        if raw.format != FORMAT_NAME {
            return Err(Error::parse(format!(
                "unsupported format {:?}, expected {FORMAT_NAME:?}",
                raw.format
            )));
        }
        if raw.size == 0 {
            return Err(Error::parse("matrix size must be positive"));
        }
        let q = QValue::parse(&raw.q)?;
        let mut entries = BTreeMap::new();
        for (row, col, terms) in raw.entries {
            if row >= raw.size || col >= raw.size {
                return Err(Error::parse(format!(
                    "entry ({row},{col}) outside a {0}×{0} matrix",
                    raw.size
                )));
            }
            let mut poly = LaurentPolynomial::zero();
            let mut last_exp: Option<i64> = None;
            for (exp, coeff) in terms {
                if last_exp.is_some_and(|prev| prev == exp) {
                    return Err(Error::parse(format!(
                        "duplicate exponent {exp} in entry ({row},{col})"
                    )));
                }
                last_exp = Some(exp);
                poly.add_term(exp, &Rational::parse(&coeff)?);
            }
            if entries.insert((row, col), poly).is_some() {
                return Err(Error::parse(format!("duplicate entry ({row},{col})")));
            }
        }
        Ok(MatrixFile { size: raw.size, q, entries })
    }

    /// Canonical serialization: entries in (row, col) order, exponents
    /// ascending, zeros omitted — byte-stable for identical content.
    pub fn to_json(&self) -> String {
        let raw = RawMatrixFile {
            format: FORMAT_NAME.to_owned(),
            size: self.size,
            q: self.q.to_string(),
            entries: self
                .entries
                .iter()
                .filter(|(_, poly)| !poly.is_zero())
                .map(|(&(row, col), poly)| {
                    let terms = poly.terms().map(|(e, c)| (e, c.to_string())).collect();
                    (row, col, terms)
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path.as_ref(), text)?;
        Ok(())
    }

    /// Evaluate every entry at the declared q inside `field`.
    pub fn evaluate_in<F: Field>(&self, field: &F) -> Result<SquareMatrix<F>> {
        let q_elem = field.from_rational(self.q.rational())?;
        let mut m = SquareMatrix::zeros(field.clone(), self.size);
        for (&(row, col), poly) in &self.entries {
            m.set(row, col, poly.evaluate_in(field, &q_elem)?);
        }
        Ok(m)
    }

    /// Snapshot of an already-evaluated rational matrix (constant entries).
    pub fn from_rational_matrix(m: &SquareMatrix<crate::scalar::Rationals>, q: &QValue) -> Self {
        let mut file = MatrixFile::new(m.dim(), q.clone());
        for row in 0..m.dim() {
            for col in 0..m.dim() {
                let v = m.get(row, col);
                if !v.is_zero() {
                    file.set(row, col, LaurentPolynomial::constant(v.clone()));
                }
            }
        }
        file
    }
}

/// For files carrying an operator on V⊗V: recover N from size = N².
pub fn leg_dimension(size: usize) -> Result<usize> {
    let n = (size as f64).sqrt().round() as usize;
    if n * n != size {
        return Err(Error::parse(format!(
            "matrix size {size} is not a perfect square, so it cannot act on V⊗V"
        )));
    }
    Ok(n)
}
