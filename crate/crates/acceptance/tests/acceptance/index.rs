use std::collections::HashSet;
use std::time::Instant;

use jobsphere_core::index::{HnswConfig, HnswIndex, IndexEntry};
use jobsphere_core::synth;

use crate::Outcome;

/// recall@10 >= 0.95 against brute force on 10,000 vectors, 100 queries, under 60 s.
pub fn recall() -> Outcome {
    let t = Instant::now();
    let all = synth::clustered_vectors(10_100, 100, 42);
    let (data, queries) = all.split_at(10_000);
    let mut idx = HnswIndex::new(HnswConfig::default());
    for (i, v) in data.iter().enumerate() {
        idx.insert(IndexEntry::new(i as u64, v.clone(), "")).unwrap();
    }
    let mut hit = 0;
    for q in queries {
        let truth: HashSet<u64> = idx.brute_force_search(q, 10).unwrap().iter().map(|h| h.id).collect();
        hit += idx.search(q, 10).unwrap().iter().filter(|h| truth.contains(&h.id)).count();
    }
    let recall = hit as f64 / (queries.len() * 10) as f64;
    let secs = t.elapsed().as_secs_f64();
    Outcome::check(
        recall >= 0.95 && secs < 60.0,
        format!("recall@10 {recall:.4} (>= 0.95), runtime {secs:.1} s (< 60 s)"),
    )
}
