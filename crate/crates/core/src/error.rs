//! Shared error type for the whole workbench.
//!
//! Every fallible operation returns [`Result`]; verdict-valued queries
//! (isotropy, homogeneity, squareness over function fields) do not abuse
//! errors for "unknown" answers — those are explicit verdict variants.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // --- field construction ---
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus polynomial is reducible: {0}")]
    ReducibleModulus(String),
    #[error("Laurent precision {0} is below the minimum of 8")]
    PrecisionTooSmall(usize),

    // --- scalar arithmetic ---
    #[error("division by zero")]
    DivisionByZero,
    #[error("Laurent precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("scalars belong to different fields")]
    OwnerMismatch,
    #[error("operation unsupported over this field: {0}")]
    UnsupportedField(String),
    #[error("residue of an element with negative valuation")]
    NegativeValuation,

    // --- forms and vectors ---
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("fields of the two operands disagree")]
    FieldMismatch,
    #[error("Pfister slot entry is zero")]
    ZeroSlot,
    #[error("gamma entry is zero")]
    ZeroGamma,
    #[error("characteristic-2 Pfister form needs an etale binary base in slot 0")]
    Char2WithoutEtaleBase,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    // --- composition algebras ---
    #[error("cannot double an algebra of dimension {0}")]
    DimTooLarge(usize),
    #[error("internal composition check failed: {0}")]
    CompositionCheckFailed(String),
    #[error("Cayley-Dickson base must be a quadratic etale algebra in characteristic 2")]
    Char2ScalarBase,
    #[error("constructor not valid in characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("algebra is not etale: {0}")]
    NonEtale(String),
    #[error("polynomial is not separable")]
    InseparablePoly,
    #[error("expected a rank-3 etale algebra")]
    NotRank3,

    // --- cubic Jordan constructions ---
    #[error("Tits construction scalar mu is zero")]
    ZeroMu,
    #[error("coefficient algebra is not regular")]
    NonRegularA,
    #[error("inadmissible scalar: N_B(p) != n_K(mu)")]
    InadmissibleScalar,
    #[error("p is not invertible")]
    NonInvertibleP,
    #[error("unsupported coefficient algebra for this construction")]
    UnsupportedB,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("construction self-check failed: {0}")]
    VerificationFailed(String),

    // --- homogeneity / invariants ---
    #[error("algebra was not built with reduced (Her3) provenance")]
    NotReducedProvenance,
    #[error("coordinate algebra is not regular; use the base-field classifier")]
    NonRegularCoordinate,

    // --- Clifford ---
    #[error("base point does not have q(e) = 1")]
    BadBasePoint,

    // --- valuation ---
    #[error("construction provenance unsupported for valuation analysis")]
    UnsupportedProvenance,
    #[error("algebra is ramified; no residue algebra on the standard lattice")]
    Ramified,

    // --- parsing / CLI ---
    #[error("parse error at {line}:{col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },
    #[error("unknown construction literal: {0}")]
    UnknownConstruction(String),
    #[error("bad field descriptor: {0}")]
    FieldDescriptorError(String),
}

impl Error {
    /// Simple one-line parse error with no useful position.
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::ParseError { line: 0, col: 0, msg: msg.into() }
    }
}
