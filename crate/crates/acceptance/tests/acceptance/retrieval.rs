use std::collections::HashSet;
use std::sync::Arc;

use chrono::Duration;
use parking_lot::RwLock;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

use jobsphere_core::clock::{Clock, SimulatedClock};
use jobsphere_core::corpus::KnowledgeBase;
use jobsphere_core::embedding::HashingEmbedder;
use jobsphere_core::fixtures;
use jobsphere_core::index::HnswConfig;
use jobsphere_core::retrieval::{normalize_query, RetrievalEngine, DEFAULT_TTL_SECS};

use crate::grounding::{random_query, violations};
use crate::Outcome;

fn knowledge() -> KnowledgeBase {
    let mut kb = KnowledgeBase::new(HnswConfig::default());
    for d in fixtures::knowledge_documents() {
        kb.add_document(&d, &HashingEmbedder).unwrap();
    }
    kb
}

fn engine(clock: Arc<SimulatedClock>) -> RetrievalEngine {
    RetrievalEngine::new(Arc::new(HashingEmbedder), Arc::new(RwLock::new(knowledge())), clock)
}

/// 1,000 answered fixture queries, every line template or verbatim cited text.
pub fn groundedness() -> Outcome {
    let e = engine(Arc::new(SimulatedClock::at_epoch()));
    let docs = fixtures::knowledge_documents();
    let kb = knowledge();
    let mut r = ChaCha8Rng::seed_from_u64(844);
    let (mut answered, mut refused, mut bad) = (0, 0, 0);
    let mut seen = HashSet::new();
    while answered < 1_000 && refused < 5_000 {
        let q = random_query(&mut r, &docs);
        if !seen.insert(q.clone()) {
            continue;
        }
        let a = e.answer_query(&q, None).unwrap();
        if a.answered {
            answered += 1;
            bad += violations(&a, &kb);
        } else {
            refused += 1;
        }
    }
    Outcome::check(
        answered == 1_000 && bad == 0,
        format!("{bad} ungrounded lines in {answered} answers (= 0); {refused} refusals"),
    )
}

/// Zipf replay hit rate >= 0.5 inside one TTL; 299 s hit, 301 s miss.
pub fn cache() -> Outcome {
    let clock = Arc::new(SimulatedClock::at_epoch());
    let e = engine(clock.clone());
    let docs = fixtures::knowledge_documents();
    let mut r = ChaCha8Rng::seed_from_u64(845);
    let mut distinct = Vec::new();
    let mut seen = HashSet::new();
    while distinct.len() < 100 {
        let q = random_query(&mut r, &docs);
        if seen.insert(normalize_query(&q)) {
            distinct.push(q);
        }
    }
    let zipf = Zipf::new(100.0, 1.1).unwrap();
    let start = clock.now();
    for _ in 0..1_000 {
        let rank: f64 = zipf.sample(&mut r);
        e.answer_query(&distinct[rank as usize - 1], None).unwrap();
        clock.advance(Duration::milliseconds(250));
    }
    let within = clock.now() - start < Duration::seconds(DEFAULT_TTL_SECS);
    let rate = e.cache().hit_rate();

    let mut boundary = Vec::new();
    for wait in [299, 301] {
        let clock = Arc::new(SimulatedClock::at_epoch());
        let e = engine(clock.clone());
        e.answer_query("clerk application deadline", None).unwrap();
        clock.advance(Duration::seconds(wait));
        boundary.push(e.answer_query("clerk application deadline", None).unwrap().cached);
    }
    Outcome::check(
        within && rate >= 0.5 && boundary == [true, false],
        format!("zipf hit rate {rate:.3} (>= 0.5); cached after 299 s {}, after 301 s {}", boundary[0], boundary[1]),
    )
}
