use std::collections::{HashMap, VecDeque};

use chrono::{DateTime, Duration, Utc};
use parking_lot::Mutex;

/// Per-user sliding window: at most `limit` admitted requests in any
/// window-length interval.
#[derive(Debug)]
pub struct RateLimiter {
    limit: usize,
    window: Duration,
    seen: Mutex<HashMap<String, VecDeque<DateTime<Utc>>>>,
}

impl RateLimiter {
    pub fn new(limit: usize, window: Duration) -> Self {
        Self {
            limit,
            window,
            seen: Mutex::new(HashMap::new()),
        }
    }

    /// Admits and records the request, or returns the whole seconds until a
    /// slot frees up.
    pub fn check(&self, user: &str, now: DateTime<Utc>) -> Result<(), u64> {
        let mut seen = self.seen.lock();
        let q = seen.entry(user.to_string()).or_default();
        while q.front().is_some_and(|t| now - *t >= self.window) {
            q.pop_front();
        }
        if q.len() >= self.limit {
            let oldest = *q.front().expect("limit is positive");
            let wait = (oldest + self.window - now).num_milliseconds();
            return Err(((wait + 999) / 1000).max(1) as u64);
        }
        q.push_back(now);
        Ok(())
    }
}
