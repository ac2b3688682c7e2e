//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The chosen prime cannot represent a rational value (denominator ≡ 0
    /// mod p); the caller must pick another prime.
    #[error("bad prime {prime}: {reason}")]
    BadPrime { prime: u64, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Braid relation R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃ fails; carries the first
    /// nonzero residual position.
    #[error("braid validation failed: nonzero residual at entry ({row},{col})")]
    BraidValidation { row: usize, col: usize },

    /// Hecke condition (R − qI)(R + q⁻¹I) = 0 fails.
    #[error("hecke validation failed at q={q}: nonzero residual at entry ({row},{col})")]
    HeckeValidation { q: String, row: usize, col: usize },

    /// A quantum integer needed by the computation vanishes at this q.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// The minimal polynomial does not vanish at 1, so no level can be built.
    #[error("construction impossible: {0}")]
    ConstructionImpossible(String),

    /// 1 is a multiple root of the minimal polynomial: the recursion's
    /// well-posedness conjecture fails. Reported with the full polynomial.
    #[error("conjecture violation: 1 is a multiple root of the minimal polynomial {polynomial}")]
    ConjectureViolation { polynomial: String },

    /// Deflation was requested at a value that is not a root.
    #[error("root not present: {value} is not a root (remainder {remainder})")]
    RootNotPresent { value: String, remainder: String },

    /// An internal cross-check (e.g. rank vs trace of an idempotent) failed;
    /// indicates a backend bug, so the computation is aborted.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
