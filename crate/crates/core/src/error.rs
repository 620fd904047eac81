//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by matrix arithmetic, jet evaluation, catalog
/// construction and the verification drivers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes are incompatible with the requested operation.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A construction parameter is out of range or inconsistent.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An anisotropy residual (v,v) != 0 where an isotropic vector is required.
    #[error("isotropy error: (v,v) has residual {residual:.3e}")]
    Isotropy { residual: f64 },

    /// Jet evaluation divided by a zero-valued jet.
    #[error("singular point: division by zero-valued jet")]
    SingularPoint,

    /// Principal log / non-integer power hit the guard band around (-inf, 0].
    #[error("branch cut: value {value} within guard band of (-inf, 0]")]
    BranchCut { value: num::complex::Complex64 },

    /// A basis-sum evaluation failed; names the offending basis vector.
    #[error("evaluation error at basis vector #{index}: {source}")]
    Evaluation {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// Polynomial degrees do not match.
    #[error("degree error: {0}")]
    Degree(String),

    /// Numerator and denominator are proportional.
    #[error("dependence error: polynomials are linearly dependent")]
    Dependence,

    /// A polynomial term does not have the declared total degree.
    #[error("homogeneity error: {0}")]
    Homogeneity(String),

    /// Every sampled point was rejected (branch-cut guard or q-floor).
    #[error("sampling exhausted: {0}")]
    SamplingExhausted(String),

    /// Malformed request (unknown format, empty report set, bad JSON, ...).
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
