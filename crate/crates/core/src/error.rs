//! Error type shared by every module of the crate.

/// Everything that can go structurally wrong when building domain values or
/// invoking an operation with ill-formed arguments.
///
/// Data-dependent outcomes (an inadmissible vector, a vanishing denominator)
/// are *not* errors; they are carried inside the reports so that batch runs
/// keep going.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("weights must be positive and finite: weight[{index}] = {value}")]
    InvalidWeight { index: usize, value: f64 },

    #[error("a weighted space needs at least one point")]
    EmptySpace,

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("e must be a unit vector: got norm {norm}")]
    NotUnit { norm: f64 },

    #[error("lambda must lie strictly inside (0, 1): got {lambda}")]
    InvalidLambda { lambda: f64 },

    #[error("invalid combination: {reason}")]
    InvalidCombination { reason: String },

    #[error("tolerance must be nonnegative and finite: got {tol}")]
    InvalidTolerance { tol: f64 },

    #[error("the M-factor needs Re(conj(lo)·hi) > 0, got {re_product}")]
    MFactorPrecondition { re_product: f64 },

    #[error("invalid box: {reason}")]
    InvalidBox { reason: String },

    #[error("{context} must be real-valued here")]
    NotReal { context: &'static str },

    #[error("degenerate denominator in {context}")]
    DegenerateDenominator { context: &'static str },

    #[error("carrier h is not normalized: sum of mu|h|^2 = {norm_sq}")]
    UnnormalizedCarrier { norm_sq: f64 },

    #[error("this operation needs the carrier h on the sample")]
    MissingCarrier,

    #[error("invalid search configuration: {reason}")]
    InvalidConfig { reason: String },
}
