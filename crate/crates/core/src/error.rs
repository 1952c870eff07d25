use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of the algebra and of the solvers' precondition gates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero element has no multiplicative inverse")]
    InverseOfZero,

    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("conjugate transpose of an all-zero matrix")]
    AllZeroMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Kleene star diverges: Tr(A) > 1")]
    StarDiverges,

    #[error("plus-closure needs Tr(A) = 1")]
    TraceNotOne,

    #[error("infeasible: {condition}")]
    Infeasible { condition: String },

    #[error("not regular: {what}")]
    NotRegular { what: String },

    #[error("zero vector: {what}")]
    ZeroVector { what: String },

    #[error("spectral radius is zero")]
    ZeroSpectralRadius,

    #[error("bounds inverted: g ≰ h")]
    BoundsInverted,

    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
}

impl Error {
    pub(crate) fn infeasible(condition: impl Into<String>) -> Self {
        Error::Infeasible {
            condition: condition.into(),
        }
    }

    pub(crate) fn not_regular(what: impl Into<String>) -> Self {
        Error::NotRegular { what: what.into() }
    }

    pub(crate) fn zero_vector(what: impl Into<String>) -> Self {
        Error::ZeroVector { what: what.into() }
    }

    /// Short name of the violated condition, used in diagnostics.
    pub fn condition(&self) -> String {
        match self {
            Error::Infeasible { condition } => condition.clone(),
            Error::NotRegular { what } => what.clone(),
            Error::ZeroVector { what } => format!("{what} = 0"),
            Error::ZeroSpectralRadius => "spectral radius = 0".to_string(),
            Error::BoundsInverted => "g ≰ h".to_string(),
            Error::StarDiverges => "Tr(A) > 1".to_string(),
            Error::TraceNotOne => "Tr(A) ≠ 1".to_string(),
            other => other.to_string(),
        }
    }

    /// True for errors raised by a precondition gate rather than malformed input.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::ShapeMismatch { .. } | Error::InvalidShape(_) | Error::InvalidScalar(_)
        )
    }
}
