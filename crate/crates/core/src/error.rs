use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular (determinant is zero)")]
    Singular,

    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// A square root that the exact backend cannot represent.
    #[error("{quantity} is irrational for this input; the exact backend cannot represent it (use --backend float)")]
    Irrational { quantity: String },

    #[error("polynomials are not univariate in a common variable")]
    NotUnivariate,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("generators are linearly dependent")]
    Dependent,

    #[error("bracket [{0}, {1}] does not close on the basis")]
    NotClosed(String, String),

    #[error("structure constants violate the Jacobi identity")]
    NotJacobi,

    #[error("rescaling singular at theta = 1")]
    RescaleSingular,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}
