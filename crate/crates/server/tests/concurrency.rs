mod support;

use std::sync::Arc;

use axum::http::StatusCode;
use serde_json::json;

use support::{start_clock, Harness};

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn fifty_concurrent_chat_sessions() {
    let dir = tempfile::tempdir().unwrap();
    let h = Arc::new(Harness::open(dir.path(), start_clock()));
    let questions = ["clerk application deadline", "police constable height", "patwari cut off marks", "skill training stipend"];
    let mut tasks = Vec::new();
    for i in 0..50 {
        let h = h.clone();
        tasks.push(tokio::spawn(async move {
            let t = h.register(&format!("user{i}")).await;
            for k in 0..3 {
                let q = questions[(i + k) % questions.len()];
                let (s, v, _) = h.call("POST", "/chat/message", Some(&t), Some(json!({"text": q}))).await;
                assert_eq!(s, StatusCode::OK, "{v}");
                assert_eq!(v["answered"], true);
            }
            let (s, v, _) = h.call("GET", "/chat/history", Some(&t), None).await;
            assert_eq!(s, StatusCode::OK);
            assert_eq!(v["total"], 3);
        }));
    }
    for t in tasks {
        t.await.unwrap();
    }
    assert_eq!(h.state.db.lock().users.len(), 50);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn limiter_holds_under_twenty_client_hammer() {
    let dir = tempfile::tempdir().unwrap();
    let h = Arc::new(Harness::open(dir.path(), start_clock()));
    let t = Arc::new(h.register("shared").await);
    let mut tasks = Vec::new();
    for _ in 0..20 {
        let (h, t) = (h.clone(), t.clone());
        tasks.push(tokio::spawn(async move {
            let mut codes = Vec::new();
            for _ in 0..10 {
                codes.push(h.call("GET", "/tests/history", Some(&t), None).await.0);
            }
            codes
        }));
    }
    let mut ok = 0;
    let mut limited = 0;
    for task in tasks {
        for c in task.await.unwrap() {
            match c {
                StatusCode::OK => ok += 1,
                StatusCode::TOO_MANY_REQUESTS => limited += 1,
                other => panic!("unexpected {other}"),
            }
        }
    }
    assert_eq!((ok, limited), (100, 100));
}
