//! Crate-wide error type.

use thiserror::Error;

use crate::ring_f2::RingPresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("presentation mismatch: {left} vs {right}")]
    PresentationMismatch {
        left: RingPresentation,
        right: RingPresentation,
    },

    #[error("truncation degree mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("degree {degree} exceeds truncation degree {truncation}")]
    DegreeAboveTruncation { degree: u32, truncation: u32 },

    #[error("class has constant term 0 and is not invertible")]
    NotAUnit,

    #[error("truncation degree {got} too small to certify (need at least {needed})")]
    TruncationTooSmall { needed: u32, got: u32 },

    #[error("more than one exponent triple matches within the bound; raise the truncation degree")]
    AmbiguousFactorization,

    #[error("cannot parse class: {0}")]
    ParseClass(String),

    #[error("dihedral order parameter m must be at least 1, got {0}")]
    InvalidDihedralOrder(u64),

    #[error("irreducible label {label} does not exist for D_{m}")]
    InvalidLabel { label: String, m: u64 },

    #[error("malformed group element: {0}")]
    MalformedElement(String),

    #[error("operation requires m {expected}, but m = {m}")]
    WrongParityClass { expected: &'static str, m: u64 },

    #[error("group mismatch: D_{left} vs D_{right}")]
    GroupMismatch { left: u64, right: u64 },

    #[error("character value {key} is required for m = {m} but was not supplied")]
    MissingCharacterValue { key: &'static str, m: u64 },

    #[error("character value {key} is not applicable for m = {m}")]
    ExtraneousCharacterValue { key: &'static str, m: u64 },

    #[error("invalid character data: {0}")]
    InvalidCharacter(String),

    #[error("{combination} is not divisible by {modulus}; input is not a genuine character")]
    Divisibility {
        combination: String,
        modulus: i64,
    },

    #[error("input is not a character: {0}")]
    NotACharacter(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
