use thiserror::Error;

use crate::ring::RingKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("modulus {0} exceeds the supported maximum 2^32")]
    ModulusTooLarge(u64),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingKind, RingKind),
    #[error("constant term is not a unit in {0}")]
    NonUnitConstant(RingKind),
    #[error("coefficient at index {index} is not a canonical element of {ring}")]
    NonCanonical { index: usize, ring: RingKind },
    #[error("a series needs at least one coefficient")]
    EmptySeries,
    #[error("invalid dissection step {step} / residue {residue}")]
    InvalidProgression { step: u64, residue: u64 },
    #[error("dissection residue {residue} exceeds series order {order}")]
    ResidueBeyondOrder { residue: u64, order: usize },
    #[error("comparison bound {bound} exceeds series order {order}")]
    BoundBeyondOrder { bound: usize, order: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported specialization: {0}")]
    UnsupportedSpecialization(String),
    #[error("enumeration budget exceeded: n = {n} > {limit}")]
    BudgetExceeded { n: u64, limit: u64 },
    #[error("vacuous family: {0}")]
    Vacuous(String),
    #[error("truncation {required} exceeds cap {cap}")]
    TruncationExceedsCap { required: u64, cap: u64 },
    #[error("unknown claim or family: {0}")]
    UnknownClaim(String),
    #[error("cannot parse {what}: {input}")]
    Parse { what: &'static str, input: String },
}
