use std::time::Instant;

use jobsphere_core::corpus::KnowledgeBase;
use jobsphere_core::embedding::{EmbeddingProvider, HashingEmbedder};
use jobsphere_core::index::HnswConfig;
use jobsphere_core::recommender::{JobCatalog, JobPosting, RankWeights, Recommender};
use jobsphere_core::synth;

use crate::{median_ms, Outcome, Verdict};

const QUERIES: usize = 200;

/// Median top-5 search (query embedding included) over 100,000 chunks < 10 ms.
pub fn chunk_search() -> Outcome {
    let now = synth::reference_now();
    let mut r = synth::rng(1_001);
    let mut kb = KnowledgeBase::new(HnswConfig::default());
    let t = Instant::now();
    for i in 0..100_000 {
        let doc = synth::random_document(&mut r, format!("d{i}"), 60, now);
        kb.add_document(&doc, &HashingEmbedder).unwrap();
    }
    let build = t.elapsed().as_secs_f64();
    assert_eq!(kb.len(), 100_000);
    let times: Vec<f64> = (0..QUERIES)
        .map(|_| {
            let q = synth::random_text(&mut r, 6);
            let t = Instant::now();
            let v = HashingEmbedder.embed(&q).unwrap();
            let hits = kb.search(&v, 5).unwrap();
            let ms = t.elapsed().as_secs_f64() * 1e3;
            assert_eq!(hits.len(), 5);
            ms
        })
        .collect();
    let med = median_ms(times);
    Outcome::check(med < 10.0, format!("median {med:.3} ms over {QUERIES} queries (< 10 ms); build {build:.0} s"))
}

/// Median search plus payload fetch over 100,000 jobs: pass <= 50 ms, warn <= 100 ms.
pub fn job_search_payload() -> Outcome {
    let now = synth::reference_now();
    let mut catalog = JobCatalog::new(HnswConfig::default());
    let t = Instant::now();
    for j in synth::random_jobs(100_000, 1_002, now) {
        catalog.upsert(j, &HashingEmbedder).unwrap();
    }
    let build = t.elapsed().as_secs_f64();
    let mut r = synth::rng(1_003);
    let times: Vec<f64> = (0..QUERIES)
        .map(|i| {
            let p = synth::random_profile(&mut r, format!("u{i}"));
            let t = Instant::now();
            let v = HashingEmbedder.embed(&p.profile_text).unwrap();
            let rows: Vec<JobPosting> = catalog.search(&v, 10).unwrap().into_iter().map(|(j, _)| j.clone()).collect();
            let ms = t.elapsed().as_secs_f64() * 1e3;
            assert_eq!(rows.len(), 10);
            ms
        })
        .collect();
    let med = median_ms(times);
    let verdict = if med <= 50.0 {
        Verdict::Pass
    } else if med <= 100.0 {
        Verdict::Warn
    } else {
        Verdict::Fail
    };
    Outcome {
        verdict,
        detail: format!("median {med:.3} ms (pass <= 50, warn <= 100); build {build:.0} s"),
    }
}

/// Median candidate retrieval for a profile over 10,000 jobs < 100 ms.
pub fn candidate_retrieval() -> Outcome {
    let now = synth::reference_now();
    let mut rec = Recommender::new(
        JobCatalog::new(HnswConfig::default()),
        RankWeights::default(),
        std::sync::Arc::new(HashingEmbedder),
    );
    for j in synth::random_jobs(10_000, 1_004, now) {
        rec.add_job(j).unwrap();
    }
    let mut r = synth::rng(1_005);
    let times: Vec<f64> = (0..QUERIES)
        .map(|i| {
            let p = synth::random_profile(&mut r, format!("u{i}"));
            let t = Instant::now();
            let c = rec.retrieve_candidates(&p).unwrap();
            let ms = t.elapsed().as_secs_f64() * 1e3;
            assert!(!c.is_empty());
            ms
        })
        .collect();
    let med = median_ms(times);
    Outcome::check(med < 100.0, format!("median {med:.3} ms over {QUERIES} profiles (< 100 ms)"))
}
