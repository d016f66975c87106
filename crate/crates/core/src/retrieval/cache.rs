use std::collections::HashMap;
use std::sync::Arc;

use chrono::{DateTime, Duration, Utc};
use parking_lot::Mutex;

use super::{GroundedAnswer, LanguageTag};
use crate::clock::Clock;

pub const DEFAULT_TTL_SECS: i64 = 300;

/// (normalized query, language)
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub query: String,
    pub language: LanguageTag,
}

impl CacheKey {
    pub fn new(query: &str, language: LanguageTag) -> Self {
        Self {
            query: normalize_query(query),
            language,
        }
    }
}

fn is_latin(c: char) -> bool {
    c.is_ascii() || ('\u{00C0}'..='\u{024F}').contains(&c)
}

/// Trim, collapse whitespace runs, lowercase Latin letters only.
pub fn normalize_query(q: &str) -> String {
    q.split_whitespace()
        .map(|w| {
            w.chars()
                .flat_map(|c| {
                    if is_latin(c) {
                        c.to_lowercase().collect::<Vec<_>>()
                    } else {
                        vec![c]
                    }
                })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

struct Entry {
    answer: GroundedAnswer,
    inserted: DateTime<Utc>,
    last_used: u64,
}

#[derive(Default)]
struct Inner {
    map: HashMap<CacheKey, Entry>,
    tick: u64,
    hits: u64,
    misses: u64,
}

/// TTL + LRU answer cache, internally synchronized.
pub struct QueryCache {
    capacity: usize,
    ttl: Duration,
    clock: Arc<dyn Clock>,
    inner: Mutex<Inner>,
}

impl std::fmt::Debug for QueryCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QueryCache")
            .field("capacity", &self.capacity)
            .field("ttl", &self.ttl)
            .field("len", &self.len())
            .finish()
    }
}

impl QueryCache {
    pub fn new(capacity: usize, ttl: Duration, clock: Arc<dyn Clock>) -> Self {
        Self {
            capacity: capacity.max(1),
            ttl,
            clock,
            inner: Mutex::new(Inner::default()),
        }
    }

    pub fn len(&self) -> usize {
        self.inner.lock().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Served only while younger than the TTL; the result has `cached = true`.
    pub fn get(&self, key: &CacheKey) -> Option<GroundedAnswer> {
        let now = self.clock.now();
        let mut inner = self.inner.lock();
        inner.tick += 1;
        let tick = inner.tick;
        let fresh = match inner.map.get_mut(key) {
            Some(e) if now - e.inserted < self.ttl => {
                e.last_used = tick;
                let mut a = e.answer.clone();
                a.cached = true;
                Some(a)
            }
            Some(_) => {
                inner.map.remove(key);
                None
            }
            None => None,
        };
        if fresh.is_some() {
            inner.hits += 1;
        } else {
            inner.misses += 1;
        }
        fresh
    }

    pub fn put(&self, key: CacheKey, answer: GroundedAnswer) {
        let now = self.clock.now();
        let ttl = self.ttl;
        let mut inner = self.inner.lock();
        inner.tick += 1;
        let tick = inner.tick;
        if !inner.map.contains_key(&key) && inner.map.len() >= self.capacity {
            inner.map.retain(|_, e| now - e.inserted < ttl);
            if inner.map.len() >= self.capacity {
                let lru = inner
                    .map
                    .iter()
                    .min_by_key(|(_, e)| e.last_used)
                    .map(|(k, _)| k.clone());
                if let Some(k) = lru {
                    inner.map.remove(&k);
                }
            }
        }
        let mut answer = answer;
        answer.cached = false;
        inner.map.insert(
            key,
            Entry {
                answer,
                inserted: now,
                last_used: tick,
            },
        );
    }

    pub fn clear(&self) {
        self.inner.lock().map.clear();
    }

    /// (hits, misses) since construction.
    pub fn counters(&self) -> (u64, u64) {
        let inner = self.inner.lock();
        (inner.hits, inner.misses)
    }

    pub fn hit_rate(&self) -> f64 {
        let (h, m) = self.counters();
        if h + m == 0 {
            0.0
        } else {
            h as f64 / (h + m) as f64
        }
    }
}
