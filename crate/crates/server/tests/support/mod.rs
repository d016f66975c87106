#![allow(dead_code)]

use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use chrono::{TimeZone, Utc};
use serde_json::{json, Value};
use tower::ServiceExt;

use jobsphere_core::clock::SimulatedClock;
use jobsphere_server::{app, AppState, ServerConfig};

pub struct Harness {
    pub clock: Arc<SimulatedClock>,
    pub state: Arc<AppState>,
    pub app: Router,
}

pub fn start_clock() -> Arc<SimulatedClock> {
    Arc::new(SimulatedClock::new(Utc.with_ymd_and_hms(2026, 3, 2, 9, 0, 0).unwrap()))
}

impl Harness {
    pub fn open(dir: &Path, clock: Arc<SimulatedClock>) -> Self {
        let cfg = ServerConfig::new(dir, "test-secret");
        let state = AppState::open(cfg, clock.clone()).unwrap();
        Self {
            clock,
            app: app(state.clone()),
            state,
        }
    }

    pub async fn call(&self, method: &str, path: &str, token: Option<&str>, body: Option<Value>) -> (StatusCode, Value, String) {
        let (s, bytes, retry) = self.raw(method, path, token, body).await;
        let v = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
        (s, v, retry)
    }

    /// Status, raw body, retry-after header.
    pub async fn raw(&self, method: &str, path: &str, token: Option<&str>, body: Option<Value>) -> (StatusCode, Vec<u8>, String) {
        let mut req = Request::builder().method(method).uri(path);
        if let Some(t) = token {
            req = req.header("authorization", format!("Bearer {t}"));
        }
        let req = match body {
            Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())).unwrap(),
            None => req.body(Body::empty()).unwrap(),
        };
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let retry = resp
            .headers()
            .get("retry-after")
            .map(|v| v.to_str().unwrap().to_string())
            .unwrap_or_default();
        let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await.unwrap().to_vec();
        (status, bytes, retry)
    }

    pub async fn register(&self, user: &str) -> String {
        let (s, v, _) = self
            .call("POST", "/auth/register", None, Some(json!({"user_id": user, "password": "correct horse"})))
            .await;
        assert_eq!(s, StatusCode::CREATED, "{v}");
        v["token"].as_str().unwrap().to_string()
    }

    pub async fn set_profile(&self, token: &str) -> Value {
        let (s, v, _) = self.call("PUT", "/profile", Some(token), Some(sample_profile())).await;
        assert_eq!(s, StatusCode::OK, "{v}");
        v
    }
}

/// A commerce graduate in Ludhiana.
pub fn sample_profile() -> Value {
    json!({
        "skills": ["excel", "tally", "accounting", "customer_service"],
        "education_level": "bachelor",
        "age": 24,
        "citizen": true,
        "home": {"lat": 30.901, "lon": 75.857},
        "desired_salary_min": 15000.0,
        "preferences": {"categories": ["Banking"]}
    })
}

pub fn resume_fixture(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/resumes").join(name)).unwrap()
}
