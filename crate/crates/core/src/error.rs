use crate::factor::Violation;

/// Errors raised by the engine.
///
/// Factor and slot indices are stored 0-based; messages print them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cross-factor product: factor {} with factor {}", .left + 1, .right + 1)]
    CrossFactor { left: usize, right: usize },

    #[error("factor index {} out of range (system has {len} factors)", .index + 1)]
    FactorOutOfRange { index: usize, len: usize },

    #[error("payload is not an element of factor {}", .factor + 1)]
    InvalidPayload { factor: usize },

    #[error("words belong to different factor systems")]
    MixedSystems,

    #[error("a free product needs at least 3 factors, got {0}")]
    TooFewFactors(usize),

    #[error("factor {}: {violation}", .factor + 1)]
    InvalidGroup { factor: usize, violation: Violation },

    #[error("factor {}: not an automorphism ({reason})", .factor + 1)]
    InvalidFactorAuto { factor: usize, reason: &'static str },

    #[error("oracle requires finite factors (factor {} is infinite)", .0 + 1)]
    InfiniteFactor(usize),

    #[error("expected {expected} slots, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("already base-equivalent: volume equals n = {0}")]
    AlreadyBase(usize),

    #[error("non-splitting input: volume {volume} > n = {n} but no spoke folds")]
    NonSplitting { volume: usize, n: usize },

    #[error("not an automorphism: the conjugated factors do not form a free splitting")]
    NotAutomorphism,

    #[error("not a stabiliser: slot {} is not carried back", .slot + 1)]
    NotStabilizer { slot: usize },

    #[error("Whitehead target set contains its operating factor {}", .0 + 1)]
    OperatingFactorInTargets(usize),

    #[error("bound {bound} is below n = {n}")]
    BoundBelowRank { bound: usize, n: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
