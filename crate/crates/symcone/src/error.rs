use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two operands live in different algebras.
    #[error("algebra descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),

    /// An element was expected in the interior of the cone.
    #[error("element is not in the cone interior (min eigenvalue {min_eig})")]
    NotInterior { min_eig: f64 },

    /// An element was expected in the closed cone.
    #[error("element is outside the closed cone (min eigenvalue {min_eig})")]
    OutsideCone { min_eig: f64 },

    /// Functional-calculus domain violation (log/sqrt/inv/fractional power
    /// on a spectrum that is not strictly positive).
    #[error("scalar function {func} needs a strictly positive spectrum (min eigenvalue {min_eig})")]
    DomainViolation { func: &'static str, min_eig: f64 },

    /// The symmetric eigensolver failed to converge (non-finite input).
    #[error("eigensolver failed: {0}")]
    EigenFailure(String),

    /// An element expected to be a projection is not.
    #[error("element is not a projection: {0}")]
    NotProjection(String),

    /// A projection violated a lattice-side precondition (trivial, maximal, ...).
    #[error("invalid projection argument: {0}")]
    InvalidProjection(String),

    /// Inputs are linearly dependent where independence is required.
    #[error("linearly dependent inputs")]
    LinearlyDependent,

    /// No midpoint witness exists: the spectrum is a reciprocal pair, so the
    /// geodesic is unique.
    #[error("no witness: spectrum is reciprocal two-point (unique geodesic)")]
    UniqueGeodesic,

    /// Generic argument error (dimension, range, shape).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A linearization or factorization residual exceeded its threshold.
    #[error("residual {residual} exceeds threshold {threshold} in {stage}")]
    ResidualExceeded {
        stage: &'static str,
        residual: f64,
        threshold: f64,
    },

    /// The supplied map is not an isometry of the requested metric.
    #[error("map is not an isometry: {0}")]
    NotAnIsometry(String),

    /// A recovered linear map does not belong to the representable
    /// Jordan-isomorphism family.
    #[error("Jordan isomorphism not representable: {0}")]
    UnrepresentableIso(String),

    /// A sampled projection map fails to extend to a Jordan isomorphism.
    #[error("not an orthoisomorphism: {0}")]
    NotOrthoisomorphism(String),

    /// All nontrivial projections of a rank-2 algebra are maximal; no chain
    /// can exist.
    #[error("rank-2 algebra: all nontrivial projections are maximal")]
    Rank2Algebra,

    /// Chain search exhausted its length cap.
    #[error("no projection chain of length <= {cap} found")]
    ChainNotFound { cap: usize },

    /// A point lies outside the affine hull of a simplex.
    #[error("point is outside the affine hull (residual {residual})")]
    OutsideAffineHull { residual: f64 },

    /// Shared-JSON encoding or decoding failure.
    #[error("encoding error: {0}")]
    Encoding(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
