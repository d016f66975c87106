mod support;

use axum::http::StatusCode;
use serde_json::json;

use support::{start_clock, Harness};

const PROBES: [&str; 5] = ["/profile", "/chat/history", "/tests/history", "/recommendations?limit=5", "/jobs/job-000042"];

#[tokio::test]
async fn state_survives_restart_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let clock = start_clock();
    let (token, revoked, before) = {
        let h = Harness::open(dir.path(), clock.clone());
        let t = h.register("keep").await;
        h.set_profile(&t).await;
        for q in ["clerk application deadline", "domicile certificate"] {
            h.call("POST", "/chat/message", Some(&t), Some(json!({"text": q}))).await;
        }
        let (_, test, _) = h.call("POST", "/tests/generate", Some(&t), Some(json!({"topic_counts": {"gk": 3}, "seed": 1}))).await;
        let id = test["test_id"].as_str().unwrap();
        h.call("POST", &format!("/tests/{id}/submit"), Some(&t), Some(json!({"answers": {}}))).await;
        let gone = h.register("gone").await;
        assert_eq!(h.call("POST", "/auth/logout", Some(&gone), None).await.0, StatusCode::NO_CONTENT);
        let mut before = Vec::new();
        for p in PROBES {
            let (s, body, _) = h.raw("GET", p, Some(&t), None).await;
            assert_eq!(s, StatusCode::OK, "{p}");
            before.push(body);
        }
        (t, gone, before)
    };
    // Same instant: recency scores depend on the clock.
    let h = Harness::open(dir.path(), clock);
    for (p, want) in PROBES.iter().zip(&before) {
        let (s, body, _) = h.raw("GET", p, Some(&token), None).await;
        assert_eq!(s, StatusCode::OK, "{p}");
        assert_eq!(&body, want, "{p} changed across restart");
    }
    assert_eq!(h.call("GET", "/profile", Some(&revoked), None).await.0, StatusCode::UNAUTHORIZED);
    let (s, _, _) = h
        .call("POST", "/auth/login", None, Some(json!({"user_id": "keep", "password": "correct horse"})))
        .await;
    assert_eq!(s, StatusCode::OK);
}
