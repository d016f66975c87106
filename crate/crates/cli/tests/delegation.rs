//! The CLI and the service answer identically over the same data directory.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use axum::body::Body;
use axum::http::Request;
use axum::Router;
use chrono::{DateTime, Utc};
use serde_json::{json, Value};
use tower::ServiceExt;

use jobsphere_core::clock::SimulatedClock;
use jobsphere_server::{app, AppState, ServerConfig};

const NOW: &str = "2026-03-02T09:00:00Z";

fn cli(data: &Path, args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_jobsphere"))
        .arg("--data-dir")
        .arg(data)
        .args(["--now", NOW, "--json"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

async fn call(app: &Router, method: &str, path: &str, token: Option<&str>, body: Option<Value>) -> Value {
    let mut req = Request::builder().method(method).uri(path).header("content-type", "application/json");
    if let Some(t) = token {
        req = req.header("authorization", format!("Bearer {t}"));
    }
    let body = body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty);
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    assert!(resp.status().is_success(), "{method} {path}: {}", resp.status());
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    serde_json::from_slice(&bytes).unwrap()
}

#[tokio::test]
async fn cli_and_service_agree() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let now: DateTime<Utc> = NOW.parse().unwrap();
    let state = AppState::open(ServerConfig::new(&data, "s"), Arc::new(SimulatedClock::new(now))).unwrap();
    let app = app(state);
    let token = call(&app, "POST", "/auth/register", None, Some(json!({"user_id": "same", "password": "long enough"})))
        .await["token"]
        .as_str()
        .unwrap()
        .to_string();
    let t = Some(token.as_str());

    for q in ["application deadline", "age relaxation for reserved categories", "quantum chromodynamics"] {
        let served = call(&app, "POST", "/chat/message", t, Some(json!({"text": q}))).await;
        assert_eq!(cli(&data, &["query", q]), served, "{q}");
    }

    let put = json!({
        "skills": ["excel", "tally", "accounting"],
        "education_level": "bachelor",
        "age": 24,
        "citizen": true,
        "home": {"lat": 30.901, "lon": 75.857},
        "desired_salary_min": 15000.0,
        "preferences": {"categories": ["Banking"]}
    });
    call(&app, "PUT", "/profile", t, Some(put)).await;
    let profile = call(&app, "GET", "/profile", t, None).await;
    let pfile = dir.path().join("profile.json");
    std::fs::write(&pfile, profile.to_string()).unwrap();
    let served = call(&app, "GET", "/recommendations?limit=10", t, None).await;
    let mine = cli(&data, &["recommend", "--profile", pfile.to_str().unwrap(), "--explain"]);
    for (i, (a, b)) in mine.as_array().unwrap().iter().zip(served.as_array().unwrap()).enumerate() {
        for (k, v) in b.as_object().unwrap() {
            assert_eq!(a.get(k), Some(v), "rank {i} field {k}");
        }
    }
    assert_eq!(mine, served);

    let bp = dir.path().join("bp.json");
    std::fs::write(&bp, r#"{"math": 4, "gk": 3}"#).unwrap();
    let served = call(&app, "POST", "/tests/generate", t, Some(json!({"topic_counts": {"math": 4, "gk": 3}, "seed": 11}))).await;
    assert_eq!(cli(&data, &["testgen", "--blueprint", bp.to_str().unwrap(), "--seed", "11"]), served);
}
