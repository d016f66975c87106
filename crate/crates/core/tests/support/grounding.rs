//! Query sampling and the independent groundedness check.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use jobsphere_core::corpus::{chunk_key, KnowledgeBase};
use jobsphere_core::ingestion::SourceDocument;
use jobsphere_core::retrieval::GroundedAnswer;

pub fn random_query(r: &mut ChaCha8Rng, docs: &[SourceDocument]) -> String {
    let d = docs.choose(r).unwrap();
    let words: Vec<&str> = d.text.split_whitespace().collect();
    let n = r.random_range(2..=7);
    let start = r.random_range(0..words.len() - n);
    let mut q: Vec<String> = words[start..start + n].iter().map(|w| w.to_lowercase()).collect();
    if r.random_bool(0.3) {
        q.push(["please", "tell", "me", "about", "details"][r.random_range(0..5)].into());
    }
    q.join(" ")
}

/// Independent check: first line is the fixed template, every other line
/// occurs verbatim in one of the cited chunks.
pub fn violations(a: &GroundedAnswer, kb: &KnowledgeBase) -> usize {
    let mut lines = a.text.lines();
    let n = a.citations.len();
    let lead = if n == 1 { "According to 1 indexed source:".to_string() } else { format!("According to {n} indexed sources:") };
    let mut bad = usize::from(lines.next() != Some(lead.as_str()));
    let cited: Vec<&str> = a
        .citations
        .iter()
        .map(|c| kb.chunk(chunk_key(&c.chunk_id)).map(|ch| ch.text.as_str()).unwrap_or(""))
        .collect();
    for line in lines {
        if !cited.iter().any(|t| t.contains(line)) {
            bad += 1;
        }
    }
    bad
}
