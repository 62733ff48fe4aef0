use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use serde::{Deserialize, Serialize};
use taste_core::Error;

/// Body of every error response: `{"error": {"code", "message", "field"?}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ErrorBody,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                error: ErrorDetail {
                    code: code.into(),
                    message: message.into(),
                    field: None,
                },
            },
        }
    }

    pub fn with_field(mut self, field: impl Into<String>) -> Self {
        self.body.error.field = Some(field.into());
        self
    }

    pub fn not_ready() -> Self {
        ApiError::new(
            StatusCode::SERVICE_UNAVAILABLE,
            "not_ready",
            "corpus and model are not loaded yet",
        )
    }

    pub fn not_found(what: impl Into<String>) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "not_found", what)
    }

    pub fn invalid_json(err: &serde_json::Error) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_json", err.to_string())
    }
}

fn field_of(err: &Error) -> Option<String> {
    match err {
        Error::Validation { field, .. } => field.clone(),
        Error::UnknownIngredient(_) | Error::DimensionMismatch { .. } | Error::DegenerateInput => {
            Some("components".into())
        }
        Error::UnknownRecipe(_) | Error::MissingFixture(_) => Some("recipe_id".into()),
        Error::InfeasibleBounds(_) => Some("bounds".into()),
        _ => None,
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        let status = match err {
            Error::Io(_) | Error::Numerical(_) | Error::NoConvergence { .. } | Error::ForwardModel(_) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let mut api = ApiError::new(status, err.code(), err.to_string());
        api.body.error.field = field_of(&err);
        api
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, axum::Json(self.body)).into_response()
    }
}
