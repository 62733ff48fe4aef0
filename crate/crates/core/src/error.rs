use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: u64,
        message: String,
    },

    /// A loaded or submitted record broke an invariant. `subject` names the
    /// offending recipe or ingredient; `field` points at the input field when
    /// known.
    #[error("{subject}: {message}")]
    Validation {
        subject: String,
        field: Option<String>,
        message: String,
    },

    #[error("unknown ingredient `{0}`")]
    UnknownIngredient(String),

    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),

    #[error("dimension mismatch: {scores} scores but {fractions} fractions")]
    DimensionMismatch { scores: usize, fractions: usize },

    #[error("cannot renormalize: all fractions are zero")]
    DegenerateInput,

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("coordinate descent did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("no ground-truth recipes available")]
    NoGroundTruth,

    #[error("infeasible bounds: {0}")]
    InfeasibleBounds(String),

    #[error("forward model failed: {0}")]
    ForwardModel(String),

    #[error("case-study recipe `{0}` is not in the corpus")]
    MissingFixture(String),

    #[error("model bundle does not match the session: {0}")]
    BundleMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            subject: subject.into(),
            field: None,
            message: message.into(),
        }
    }

    pub(crate) fn validation_field(
        subject: impl Into<String>,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Validation {
            subject: subject.into(),
            field: Some(field.into()),
            message: message.into(),
        }
    }

    /// True for errors caused by bad input rather than a bug or I/O failure.
    pub fn is_user_error(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::Numerical(_) | Error::NoConvergence { .. }
        )
    }

    /// Stable machine-readable code used in service error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::Validation { .. } => "validation_error",
            Error::UnknownIngredient(_) => "unknown_ingredient",
            Error::UnknownRecipe(_) => "unknown_recipe",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegenerateInput => "degenerate_input",
            Error::Numerical(_) => "numerical_error",
            Error::InvalidConfig(_) => "invalid_config",
            Error::NonFinite(_) => "non_finite",
            Error::NoConvergence { .. } => "no_convergence",
            Error::InsufficientData(_) => "insufficient_data",
            Error::NoGroundTruth => "no_ground_truth",
            Error::InfeasibleBounds(_) => "infeasible_bounds",
            Error::ForwardModel(_) => "forward_model_error",
            Error::MissingFixture(_) => "missing_fixture",
            Error::BundleMismatch(_) => "bundle_mismatch",
            Error::Io(_) => "io_error",
            Error::Json(_) => "json_error",
        }
    }
}
