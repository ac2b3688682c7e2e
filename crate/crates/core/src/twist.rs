//! Twist operators on W⊗W, where W is the N²-dimensional span of the
//! algebra generators. Fixed points of a twist are exactly the quadratic
//! relations' complement; the ideal of relations is the image of (twist − I).
//!
//! A W-index is the (row, col) pair of a generator, flattened as row·N + col;
//! every downstream tensor-leg embedding inherits this convention.

use crate::error::{Error, Result};
use crate::hecke::{HeckeSource, HeckeSymmetry};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, QValue};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TwistKind {
    Rtt,
    Re,
}

impl TwistKind {
    pub fn label(&self) -> &'static str {
        match self {
            TwistKind::Rtt => "rtt",
            TwistKind::Re => "re",
        }
    }
}

/// The operator on W⊗W (dimension N⁴) encoding the quadratic relations.
#[derive(Clone, Debug)]
pub struct TwistOperator<F: Field> {
    kind: TwistKind,
    n: usize,
    q: QValue,
    matrix: SquareMatrix<F>,
    source: HeckeSource,
}

impl<F: Field> TwistOperator<F> {
    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    /// Dimension N of V; W has dimension N².
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

    /// dim Im(twist − I): the dimension of the quadratic-relation space.
    pub fn relation_space_dim(&self) -> usize {
        let field = self.matrix.field().clone();
        let mut shifted = self.matrix.clone();
        shifted.add_scaled_identity(&field.neg(&field.one()));
        shifted.rank()
    }
}

/// Conjugation X ↦ R⁻¹ X R as an operator on the space of N²×N² coefficient
/// matrices, in "matrix position" flattening: the basis vector at position
/// ((i₁i₂),(j₁j₂)) is indexed by (i₁N+i₂)·N² + (j₁N+j₂).
fn conjugation_operator<F: Field>(
    r: &SquareMatrix<F>,
    r_inv: &SquareMatrix<F>,
    n: usize,
) -> SquareMatrix<F> {
    let field = r.field().clone();
    let n2 = n * n;
    let dim = n2 * n2;
    SquareMatrix::from_fn(field.clone(), dim, |row, col| {
        let (row_pair, col_pair) = (row / n2, row % n2); // (i₁i₂), (j₁j₂)
        let (k_pair, l_pair) = (col / n2, col % n2); // (k₁k₂), (l₁l₂)
        let a = r_inv.get(row_pair, k_pair);
        if field.is_zero(a) {
            field.zero()
        } else {
            field.mul(a, r.get(l_pair, col_pair))
        }
    })
}

/// Permutation taking the W⊗W index ((i₁j₁),(i₂j₂)) to the matrix-position
/// index ((i₁i₂),(j₁j₂)).
fn shuffle_to_matrix_position(w_index: usize, n: usize) -> usize {
    let n2 = n * n;
    let (a1, a2) = (w_index / n2, w_index % n2);
    let (i1, j1) = (a1 / n, a1 % n);
    let (i2, j2) = (a2 / n, a2 % n);
    (i1 * n + i2) * n2 + (j1 * n + j2)
}

/// The RTT twist: entries
/// twist[((i₁j₁),(i₂j₂)), ((k₁l₁),(k₂l₂))] = R⁻¹[(i₁i₂),(k₁k₂)] · R[(l₁l₂),(j₁j₂)],
/// so that fixed points correspond to the relations R T₁T₂ = T₁T₂ R.
pub fn rtt_twist<F: Field>(h: &HeckeSymmetry<F>) -> Result<TwistOperator<F>> {
    let n = h.n();
    let r = h.matrix();
    let r_inv = h.inverse_matrix()?;
    let conj = conjugation_operator(r, &r_inv, n);
    let field = r.field().clone();
    let dim = n * n * n * n;
    let matrix = SquareMatrix::from_fn(field, dim, |row, col| {
        conj.get(
            shuffle_to_matrix_position(row, n),
            shuffle_to_matrix_position(col, n),
        )
        .clone()
    });
    Ok(TwistOperator {
        kind: TwistKind::Rtt,
        n,
        q: h.q().clone(),
        matrix,
        source: h.source().clone(),
    })
}

/// The reflection-equation twist. The quadratic combination
/// Y = L₁ R L₁ R⁻¹ defines a change of basis Φ from monomial coefficients
/// l_x^y ⊗ l_z^w to Y-coefficient tensors:
///
///   Φ[(i₁i₂j₁j₂), (x,y,z,w)] = [x = i₁] · Σ_b R[(y,i₂),(z,b)] · R⁻¹[(w,b),(j₁j₂)]
///
/// and the twist is Φ⁻¹ ∘ (X ↦ R⁻¹XR) ∘ Φ, whose fixed points encode
/// R·Y = Y·R — the reflection equation. For the flip this collapses to the
/// RTT twist exactly.
pub fn re_twist<F: Field>(h: &HeckeSymmetry<F>) -> Result<TwistOperator<F>> {
    let n = h.n();
    let n2 = n * n;
    let dim = n2 * n2;
    let r = h.matrix();
    let r_inv = h.inverse_matrix()?;
    let field = r.field().clone();

    let phi = SquareMatrix::from_fn(field.clone(), dim, |row, col| {
        // row = matrix position ((i₁i₂),(j₁j₂)); col = monomial (x,y,z,w).
        let (ipair, jpair) = (row / n2, row % n2);
        let (i1, i2) = (ipair / n, ipair % n);
        let (a1, a2) = (col / n2, col % n2);
        let (x, y) = (a1 / n, a1 % n);
        let (z, w) = (a2 / n, a2 % n);
        if x != i1 {
            return field.zero();
        }
        let mut acc = field.zero();
        for b in 0..n {
            let left = r.get(y * n + i2, z * n + b);
            if field.is_zero(left) {
                continue;
            }
            acc = field.add(&acc, &field.mul(left, r_inv.get(w * n + b, jpair)));
        }
        acc
    });

    let conj = conjugation_operator(r, &r_inv, n);
    let conj_phi = conj.multiply(&phi)?;
    let matrix = phi.solve(&conj_phi).map_err(|_| {
        Error::DegenerateParameter(format!(
            "reflection-equation coefficient map is singular at q={}, N={n}",
            h.q()
        ))
    })?;

    Ok(TwistOperator {
        kind: TwistKind::Re,
        n,
        q: h.q().clone(),
        matrix,
        source: h.source().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{flip, standard_glq};
    use crate::poly::MonicPolynomial;
    use crate::scalar::{QValue, Rational, Rationals};

    fn q(s: &str) -> QValue {
        QValue::parse(s).unwrap()
    }

    fn r(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn flip_twist_is_an_involution() {
        let t = rtt_twist(&flip(&Rationals, 2).unwrap()).unwrap();
        let m = t.matrix();
        assert_eq!(m.dim(), 16);
        assert_eq!(m.multiply(m).unwrap(), SquareMatrix::identity(Rationals, 16));
    }

    #[test]
    fn scalar_generator_space_twist_is_identity() {
        let t = rtt_twist(&standard_glq(&Rationals, 1, &q("3/2")).unwrap()).unwrap();
        assert_eq!(t.matrix(), &SquareMatrix::identity(Rationals, 1));
        let t = re_twist(&standard_glq(&Rationals, 1, &q("3/2")).unwrap()).unwrap();
        assert_eq!(t.matrix(), &SquareMatrix::identity(Rationals, 1));
    }

    #[test]
    fn rtt_twist_spectrum_for_standard_glq() {
        // minimal polynomial (x − 1)(x + q²)(x + q⁻²) at q = 3/2.
        let t = rtt_twist(&standard_glq(&Rationals, 2, &q("3/2")).unwrap()).unwrap();
        let mp = t.matrix().minimal_polynomial().unwrap();
        let expected =
            MonicPolynomial::from_roots(Rationals, &[r("1"), r("-9/4"), r("-4/9")]);
        assert_eq!(mp, expected);
    }

    #[test]
    fn relation_space_dimensions() {
        let t = rtt_twist(&flip(&Rationals, 2).unwrap()).unwrap();
        assert_eq!(t.relation_space_dim(), 6);
        let id_twist = rtt_twist(&standard_glq(&Rationals, 1, &q("7/5")).unwrap()).unwrap();
        assert_eq!(id_twist.relation_space_dim(), 0);
        let tq = rtt_twist(&standard_glq(&Rationals, 2, &q("3/2")).unwrap()).unwrap();
        assert_eq!(tq.relation_space_dim(), 6);
    }

    #[test]
    fn re_twist_equals_rtt_twist_for_flips() {
        for n in 1..=3 {
            let h = flip(&Rationals, n).unwrap();
            assert_eq!(
                re_twist(&h).unwrap().matrix(),
                rtt_twist(&h).unwrap().matrix(),
                "N = {n}"
            );
        }
    }

    #[test]
    fn twists_are_invertible() {
        for kind in ["rtt", "re"] {
            let h = standard_glq(&Rationals, 2, &q("3/2")).unwrap();
            let t = if kind == "rtt" { rtt_twist(&h) } else { re_twist(&h) }.unwrap();
            assert_eq!(t.matrix().rank(), 16, "{kind} twist must have full rank");
        }
    }

    #[test]
    fn twist_spectrum_divides_the_cubic_for_all_sources() {
        // Divisibility form of the spectrum claim, including degenerate
        // cases where the minimal polynomial is a proper divisor.
        let cases: Vec<(crate::hecke::HeckeSymmetry<Rationals>, &str)> = vec![
            (flip(&Rationals, 2).unwrap(), "1"),
            (crate::hecke::super_flip(&Rationals, 1, 1).unwrap(), "1"),
            (standard_glq(&Rationals, 2, &q("7/5")).unwrap(), "7/5"),
            (standard_glq(&Rationals, 3, &q("3/2")).unwrap(), "3/2"),
        ];
        for (h, qs) in cases {
            let t = rtt_twist(&h).unwrap();
            let mp = t.matrix().minimal_polynomial().unwrap();
            let qv = r(qs);
            let q_sq = &qv * &qv;
            let cubic = crate::poly::Polynomial::from_roots(
                Rationals,
                &[r("1"), -&q_sq, -&q_sq.recip().unwrap()],
            );
            let (_, rem) = cubic.div_rem_monic(mp.as_poly()).unwrap();
            assert!(rem.is_zero(), "source {:?} q={qs}", h.source());
        }
    }

    #[test]
    fn relation_space_complements_the_symmetrizer() {
        // rank(T − I) + rank(S⁽²⁾) = N⁴.
        for (h, dim) in [
            (flip(&Rationals, 2).unwrap(), 16),
            (standard_glq(&Rationals, 2, &q("3/2")).unwrap(), 16),
        ] {
            let t = rtt_twist(&h).unwrap();
            let s2 = crate::tower::build_s2(&t).unwrap();
            assert_eq!(t.relation_space_dim() + s2.s.rank(), dim);
        }
    }

    #[test]
    fn re_twist_shares_the_rtt_spectrum_by_similarity() {
        let h = standard_glq(&Rationals, 2, &q("7/5")).unwrap();
        let rtt = rtt_twist(&h).unwrap();
        let re = re_twist(&h).unwrap();
        assert_eq!(
            rtt.matrix().minimal_polynomial().unwrap(),
            re.matrix().minimal_polynomial().unwrap()
        );
    }
}
