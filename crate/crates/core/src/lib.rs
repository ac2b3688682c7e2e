//! Exact-arithmetic construction and verification of symmetrizer idempotents
//! in quantum matrix algebras.
//!
//! Starting from a Hecke symmetry `R` on `V ⊗ V` — the flip, a super-flip, the
//! standard GL_q(N) braiding, or a user-supplied matrix — this crate builds the
//! twist operator on the N²-dimensional generator space `W` whose fixed points
//! encode the quadratic relations (RTT or reflection-equation flavour), then
//! grows the chain of symmetrizers S⁽²⁾, S⁽³⁾, … on `W⊗ⁿ` through exact
//! minimal polynomials:
//!
//! ```text
//! S⁽ⁿ⁺¹⁾ = p(S⁽ⁿ⁾₁..ₙ · S⁽ⁿ⁾₂..ₙ₊₁) / p(1),      p(x) = m(x) / (x − 1),
//! ```
//!
//! where `m` is the minimal polynomial of the overlapped product. Every number
//! is an exact rational (or a residue in a large prime field used as an
//! acceleration backend); no floating point appears anywhere.

pub mod error;
pub mod hecke;
pub mod matfile;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod tower;
pub mod twist;

pub use error::{Error, Result};
pub use hecke::{flip, load_hecke, standard_glq, super_flip, HeckeSource, HeckeSymmetry};
pub use matrix::SquareMatrix;
pub use poly::{MonicPolynomial, Polynomial};
pub use scalar::{
    quantum_integer, to_prime_field, Field, LaurentPolynomial, PrimeField, PrimeFieldScalar,
    QValue, Rational, Rationals,
};
pub use tower::{
    check_absorption, check_factor_interchange, classical_oracle, coefficients_s3,
    v_symmetrizer_2, SymmetrizerLevel, SymmetrizerTower, TowerOptions,
};
pub use twist::{re_twist, rtt_twist, TwistKind, TwistOperator};
