use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

use jobsphere_core::mocktest::MockTestError;
use jobsphere_core::recommender::RecommendError;
use jobsphere_core::retrieval::RetrievalError;

#[derive(Debug, Serialize)]
struct Body<'a> {
    code: &'a str,
    message: &'a str,
}

/// Error response with a `{code, message}` body.
#[derive(Debug, Clone)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    pub retry_after: Option<u64>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
            retry_after: None,
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "validation_error", message)
    }

    pub fn unauthorized(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNAUTHORIZED, "unauthorized", message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }

    pub fn rate_limited(retry_after: u64) -> Self {
        Self {
            retry_after: Some(retry_after),
            ..Self::new(StatusCode::TOO_MANY_REQUESTS, "rate_limited", format!("too many requests, retry in {retry_after} s"))
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut resp = (
            self.status,
            Json(Body {
                code: self.code,
                message: &self.message,
            }),
        )
            .into_response();
        if let Some(s) = self.retry_after {
            resp.headers_mut().insert(header::RETRY_AFTER, HeaderValue::from(s));
        }
        resp
    }
}

impl From<RetrievalError> for ApiError {
    fn from(e: RetrievalError) -> Self {
        match e {
            RetrievalError::EmptyText => Self::bad_request("text is empty"),
            other => Self::new(StatusCode::SERVICE_UNAVAILABLE, "unavailable", other.to_string()),
        }
    }
}

impl From<RecommendError> for ApiError {
    fn from(e: RecommendError) -> Self {
        match e {
            RecommendError::InvalidProfile(m) => Self::validation(m),
            RecommendError::InvalidCoordinate { .. } => Self::validation(e.to_string()),
            other => Self::internal(other.to_string()),
        }
    }
}

impl From<MockTestError> for ApiError {
    fn from(e: MockTestError) -> Self {
        match e {
            MockTestError::InsufficientQuestions { .. } => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "insufficient_questions", e.to_string())
            }
            MockTestError::InvalidBlueprint(_) | MockTestError::InvalidSubmission(_) | MockTestError::ForeignQuestion { .. } => {
                Self::validation(e.to_string())
            }
            MockTestError::UnknownTest(_) => Self::not_found(e.to_string()),
            other => Self::internal(other.to_string()),
        }
    }
}
