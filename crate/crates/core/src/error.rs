use thiserror::Error;

/// Errors produced by the library. Validation failures on design matrices
/// are not errors (see [`crate::lattice::ValidationReport`]); these variants
/// cover operations whose preconditions or solver assumptions are violated.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("face is not a facet (codimension != 1)")]
    NotAFacet,
    #[error("face data is inconsistent with the configuration")]
    FaceMismatch,
    #[error("configuration does not affinely span its ambient dimension")]
    DegenerateConfiguration,
    #[error("ambient dimension mismatch")]
    DimensionMismatch,
    #[error("expected {expected} weights, got {got}")]
    WeightLengthMismatch { expected: usize, got: usize },
    #[error("expected {expected} scalings, got {got}")]
    ScalingLengthMismatch { expected: usize, got: usize },
    #[error("weights must be keyed by exactly the off-face columns")]
    WeightDomainMismatch,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("data vector sums to zero")]
    ZeroDataSum,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("genericity failure after {0} attempts")]
    GenericityFailure(usize),
    #[error("remaining columns no longer affinely span")]
    SpanCollapse,
    #[error("not a flag: {0}")]
    NotAFlag(String),
    #[error("probability vector has a nonpositive entry")]
    NonpositiveProbability,
    #[error("computation exceeded its deadline")]
    Timeout,
    #[error("modular computation could not be verified over the rationals")]
    ModularVerification,
}
