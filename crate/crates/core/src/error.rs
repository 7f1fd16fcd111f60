use thiserror::Error;

use crate::signature::Signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtError {
    #[error("invalid surface signature (g={g}, n={n}): need 2g + n >= 1")]
    InvalidSignature { g: usize, n: usize },

    #[error("signature mismatch: {0:?} vs {1:?}")]
    SignatureMismatch(Signature, Signature),

    #[error("generator index out of range: {0}")]
    GeneratorOutOfRange(String),

    #[error("log requires a unital argument (constant term 1), got constant term {0}")]
    NonUnitalLog(String),

    #[error("exp requires an augmented argument (constant term 0), got constant term {0}")]
    NonAugmentedExp(String),

    #[error("degree overflow: output validity would be negative (input validity {0})")]
    DegreeOverflow(usize),

    #[error("tangential derivation is not of positive degree")]
    NotPositiveDegree,

    #[error("divergence `div` is only defined in genus 0 (g = {0})")]
    GenusNotZero(usize),

    #[error("expansion is not special to degree {0}")]
    NotSpecial(usize),

    #[error("KVI fails at degree {0}")]
    KvIFailed(usize),

    #[error("KVII fails at degree {0}")]
    KvIIFailed(usize),

    #[error("logarithm of automorphism failed to converge")]
    LogFailure,

    #[error("the zero element has no weight")]
    ZeroElement,

    #[error("framing does not match signature: {0}")]
    FramingMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree {requested} exceeds the configured cap {cap}")]
    DegreeCap { requested: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, GtError>;
