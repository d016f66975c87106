use std::sync::Arc;

use axum::http::StatusCode;
use chrono::Duration;
use serde_json::json;

use crate::server_support::{start_clock, Harness};
use crate::Outcome;

const PROBES: [&str; 4] = ["/profile", "/chat/history", "/tests/history", "/recommendations?limit=5"];

async fn expiry() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let h = Harness::open(dir.path(), start_clock());
    let t = h.register("exp").await;
    h.clock.advance(Duration::hours(24));
    let at = h.call("GET", "/chat/history", Some(&t), None).await.0;
    h.clock.advance(Duration::seconds(1));
    let after = h.call("GET", "/chat/history", Some(&t), None).await.0;
    at == StatusCode::OK && after == StatusCode::UNAUTHORIZED
}

async fn logout() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let h = Harness::open(dir.path(), start_clock());
    let t = h.register("out").await;
    let before = h.call("GET", "/chat/history", Some(&t), None).await.0;
    let out = h.call("POST", "/auth/logout", Some(&t), None).await.0;
    let (s, v, _) = h.call("GET", "/chat/history", Some(&t), None).await;
    before == StatusCode::OK
        && out == StatusCode::NO_CONTENT
        && s == StatusCode::UNAUTHORIZED
        && v["message"] == "token revoked"
}

async fn rate_limit() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let h = Harness::open(dir.path(), start_clock());
    let t = h.register("busy").await;
    let mut ok = 0;
    for _ in 0..100 {
        if h.call("GET", "/chat/history", Some(&t), None).await.0 == StatusCode::OK {
            ok += 1;
        }
        h.clock.advance(Duration::milliseconds(100));
    }
    let (s, _, retry) = h.call("GET", "/chat/history", Some(&t), None).await;
    h.clock.advance(Duration::seconds(61));
    let recovered = h.call("GET", "/chat/history", Some(&t), None).await.0;
    ok == 100 && s == StatusCode::TOO_MANY_REQUESTS && !retry.is_empty() && recovered == StatusCode::OK
}

async fn durability() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let clock = start_clock();
    let (token, revoked, before) = {
        let h = Harness::open(dir.path(), clock.clone());
        let t = h.register("keep").await;
        h.set_profile(&t).await;
        h.call("POST", "/chat/message", Some(&t), Some(json!({"text": "clerk application deadline"}))).await;
        let (_, test, _) = h.call("POST", "/tests/generate", Some(&t), Some(json!({"topic_counts": {"gk": 3}, "seed": 1}))).await;
        let id = test["test_id"].as_str().unwrap_or_default().to_string();
        h.call("POST", &format!("/tests/{id}/submit"), Some(&t), Some(json!({"answers": {}}))).await;
        let gone = h.register("gone").await;
        h.call("POST", "/auth/logout", Some(&gone), None).await;
        let mut before = Vec::new();
        for p in PROBES {
            before.push(h.raw("GET", p, Some(&t), None).await);
        }
        (t, gone, before)
    };
    let h = Harness::open(dir.path(), clock);
    let mut same = true;
    for (p, want) in PROBES.iter().zip(&before) {
        same &= want.0 == StatusCode::OK && h.raw("GET", p, Some(&token), None).await == *want;
    }
    let blacklisted = h.call("GET", "/profile", Some(&revoked), None).await.0 == StatusCode::UNAUTHORIZED;
    same && blacklisted
}

async fn concurrent_sessions() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let h = Arc::new(Harness::open(dir.path(), start_clock()));
    let questions = ["clerk application deadline", "police constable height", "patwari cut off marks", "skill training stipend"];
    let tasks: Vec<_> = (0..50)
        .map(|i| {
            let h = h.clone();
            tokio::spawn(async move {
                let t = h.register(&format!("user{i}")).await;
                let mut ok = true;
                for k in 0..3 {
                    let (s, v, _) = h.call("POST", "/chat/message", Some(&t), Some(json!({"text": questions[(i + k) % 4]}))).await;
                    ok &= s == StatusCode::OK && v["answered"] == true;
                }
                let (s, v, _) = h.call("GET", "/chat/history", Some(&t), None).await;
                ok && s == StatusCode::OK && v["total"] == 3
            })
        })
        .collect();
    let mut all = true;
    for t in tasks {
        all &= t.await.unwrap_or(false);
    }
    all && h.state.db.lock().users.len() == 50
}

/// 24 h token expiry, logout blacklist, 100/min rate limit, restart
/// durability and 50 concurrent chat sessions.
pub fn service() -> Outcome {
    let rt = tokio::runtime::Builder::new_multi_thread().worker_threads(4).enable_all().build().unwrap();
    let checks = rt.block_on(async {
        [
            ("expiry", expiry().await),
            ("logout", logout().await),
            ("rate-limit", rate_limit().await),
            ("durability", durability().await),
            ("50-sessions", concurrent_sessions().await),
        ]
    });
    let detail = checks.iter().map(|(n, ok)| format!("{n} {}", if *ok { "ok" } else { "FAILED" })).collect::<Vec<_>>().join(", ");
    Outcome::check(checks.iter().all(|(_, ok)| *ok), detail)
}
