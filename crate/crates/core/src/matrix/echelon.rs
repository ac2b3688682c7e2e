//! Incremental exact Gaussian elimination.
//!
//! Rows are inserted one at a time and reduced against the rows already
//! stored, so rank-r inputs cost O(r·n·w) field operations instead of a full
//! cubic sweep. Optionally tracks how each stored row combines the original
//! inserted rows, which is what turns the first linear dependence among
//! vectorized matrix powers into minimal-polynomial coefficients.

use crate::scalar::Field;

pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Row<F>>,
    inserted: usize,
    track: bool,
}

struct Row<F: Field> {
    data: Vec<F::Elem>,
    pivot: usize,
    /// data = Σ combo[j] · (j-th inserted row); only kept when tracking.
    combo: Vec<F::Elem>,
}

pub enum Insert<F: Field> {
    Independent,
    /// Coefficients c with Σ cⱼ · (j-th inserted row) = 0 and c_last = 1.
    Dependent(Vec<F::Elem>),
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize, track: bool) -> Self {
        Echelon { field, width, rows: Vec::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: Vec<F::Elem>) -> Insert<F> {
        assert_eq!(row.len(), self.width);
        let f = self.field.clone();
        let index = self.inserted;
        self.inserted += 1;

        let mut combo = if self.track {
            let mut c = vec![f.zero(); index + 1];
            c[index] = f.one();
            c
        } else {
            Vec::new()
        };

        // Reduce in insertion order; row i is already clear at the pivots of
        // all earlier rows, so one pass suffices.
        for stored in &self.rows {
            let lead = row[stored.pivot].clone();
            if f.is_zero(&lead) {
                continue;
            }
            let factor = f.div(&lead, &stored.data[stored.pivot]).expect("pivot nonzero");
            for (r, s) in row.iter_mut().zip(&stored.data) {
                if !f.is_zero(s) {
                    *r = f.sub(r, &f.mul(&factor, s));
                }
            }
            if self.track {
                for (c, s) in combo.iter_mut().zip(&stored.combo) {
                    *c = f.sub(c, &f.mul(&factor, s));
                }
            }
        }

        // Pivot choice: the cheapest nonzero entry, to limit growth.
        let pivot = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .min_by_key(|(_, x)| f.bit_size(x))
            .map(|(i, _)| i);

        match pivot {
            None => Insert::Dependent(combo),
            Some(pivot) => {
                normalize_with_combo(&f, &mut row, &mut combo);
                self.rows.push(Row { data: row, pivot, combo });
                Insert::Independent
            }
        }
    }
}

/// Normalize a row via the field hook, applying the same rescaling to the
/// tracked combination so the two stay consistent.
fn normalize_with_combo<F: Field>(f: &F, row: &mut [F::Elem], combo: &mut [F::Elem]) {
    if combo.is_empty() {
        f.normalize_row(row);
        return;
    }
    // Find a reference nonzero entry to recover the applied scale.
    let idx = match row.iter().position(|x| !f.is_zero(x)) {
        Some(i) => i,
        None => return,
    };
    let before = row[idx].clone();
    f.normalize_row(row);
    let after = &row[idx];
    if *after != before {
        let scale = f.div(after, &before).expect("nonzero reference entry");
        for c in combo.iter_mut() {
            *c = f.mul(c, &scale);
        }
    }
}

/// Exact rank of a row-major `rows × width` buffer.
pub fn rank_of<F: Field>(field: &F, rows: usize, width: usize, data: &[F::Elem]) -> usize {
    let mut ech = Echelon::new(field.clone(), width, false);
    for i in 0..rows {
        ech.insert(data[i * width..(i + 1) * width].to_vec());
    }
    ech.rank()
}

/// Express `target` in the span of `basis` (free coefficients set to zero,
/// earlier basis vectors preferred), or report failure.
pub struct SpanSolve<F: Field> {
    pub coefficients: Vec<F::Elem>,
    /// True when the basis itself was linearly dependent.
    pub degenerate: bool,
}

pub fn solve_in_span<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<SpanSolve<F>> {
    let width = target.len();
    let mut ech = Echelon::new(field.clone(), width, true);
    let mut independent = 0usize;
    for v in basis {
        assert_eq!(v.len(), width);
        if let Insert::Independent = ech.insert(v.clone()) {
            independent += 1;
        }
    }
    match ech.insert(target.to_vec()) {
        Insert::Independent => None, // target outside the span
        Insert::Dependent(combo) => {
            // combo has length basis.len() + 1 with trailing 1 on the target:
            // target = -Σ combo[j]·basis[j].
            let coefficients = combo[..basis.len()]
                .iter()
                .map(|c| field.neg(c))
                .collect();
            Some(SpanSolve { coefficients, degenerate: independent < basis.len() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Rationals};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_integers(n, d).unwrap()
    }

    #[test]
    fn rank_counts_independent_rows() {
        let f = Rationals;
        let data = vec![
            r(1, 1), r(2, 1), r(3, 1),
            r(2, 1), r(4, 1), r(6, 1), // multiple of row 0
            r(0, 1), r(1, 1), r(1, 1),
        ];
        assert_eq!(rank_of(&f, 3, 3, &data), 2);
    }

    #[test]
    fn dependence_coefficients_reproduce_zero() {
        let f = Rationals;
        let rows: Vec<Vec<Rational>> = vec![
            vec![r(1, 2), r(0, 1), r(1, 3)],
            vec![r(0, 1), r(1, 5), r(2, 1)],
            vec![r(1, 1), r(3, 5), r(20, 3)], // 2·row0 + 3·row1
        ];
        let mut ech = Echelon::new(f, 3, true);
        assert!(matches!(ech.insert(rows[0].clone()), Insert::Independent));
        assert!(matches!(ech.insert(rows[1].clone()), Insert::Independent));
        let combo = match ech.insert(rows[2].clone()) {
            Insert::Dependent(c) => c,
            Insert::Independent => panic!("expected dependence"),
        };
        assert_eq!(combo.len(), 3);
        assert_eq!(combo[2], Rational::one());
        // Σ combo[j]·row_j = 0
        for col in 0..3 {
            let mut acc = Rational::zero();
            for (c, row) in combo.iter().zip(&rows) {
                acc = &acc + &(c * &row[col]);
            }
            assert!(acc.is_zero(), "column {col} does not cancel");
        }
    }

    #[test]
    fn span_solve_prefers_early_vectors() {
        let f = Rationals;
        // basis: v0, v1, v2 = (5/4)v1 − (1/4)v0 dependent; target in span.
        let v0 = vec![r(1, 1), r(0, 1)];
        let v1 = vec![r(0, 1), r(1, 1)];
        let v2 = vec![r(-1, 4), r(5, 4)];
        let target = vec![r(3, 1), r(7, 1)];
        let solve = solve_in_span(&f, &[v0, v1, v2], &target).unwrap();
        assert!(solve.degenerate);
        assert_eq!(solve.coefficients, vec![r(3, 1), r(7, 1), r(0, 1)]);
    }

    #[test]
    fn span_solve_detects_inconsistency() {
        let f = Rationals;
        let v0 = vec![r(1, 1), r(0, 1), r(0, 1)];
        let target = vec![r(0, 1), r(1, 1), r(0, 1)];
        assert!(solve_in_span(&f, &[v0], &target).is_none());
    }
}
