use std::sync::Arc;

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jobsphere_core::clock::{Clock, SimulatedClock};
use jobsphere_core::corpus::KnowledgeBase;
use jobsphere_core::embedding::HashingEmbedder;
use jobsphere_core::index::HnswConfig;
use jobsphere_core::ingestion::*;
use jobsphere_core::synth;

use crate::{core_data, Outcome};

fn t0() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2026, 3, 2, 4, 0, 0).unwrap()
}

fn chunks_ok(r: &mut ChaCha8Rng) -> usize {
    let mut bad = 0;
    for i in 0..1_000 {
        let n = r.random_range(1..=5_000);
        let doc = synth::random_document(r, format!("d{i}"), n, t0());
        let chunks = chunk_document(&doc, &HashingEmbedder).unwrap();
        let spans: Vec<(usize, usize)> = chunks.iter().map(|c| c.token_span).collect();
        let covers = spans[0].0 == 0 && spans.last().unwrap().1 == n;
        let sized = chunks.iter().all(|c| c.token_count() > 0 && c.token_count() <= CHUNK_TOKENS);
        let overlaps = spans.windows(2).enumerate().all(|(k, w)| {
            let o = w[0].1 as isize - w[1].0 as isize;
            o >= CHUNK_OVERLAP as isize && (k + 2 >= spans.len() || o == CHUNK_OVERLAP as isize)
        });
        if !(covers && sized && overlaps) {
            bad += 1;
        }
    }
    bad
}

fn versioning_round_trip() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let doc = SourceDocument::new("k", DocKind::Result, "merit list published", t0(), "f");
    {
        let mut s = RecordStore::open(dir.path()).unwrap();
        s.upsert(&doc, t0()).unwrap();
        let mut d2 = doc.clone();
        d2.text = "revised merit list published".into();
        s.upsert(&d2, t0() + Duration::days(2)).unwrap();
    }
    let s = RecordStore::open(dir.path()).unwrap();
    let old = s.revert("k", t0() + Duration::days(1), t0() + Duration::days(3)).map(|d| d.text.clone());
    let new = s.revert("k", t0() + Duration::days(3), t0() + Duration::days(3)).map(|d| d.text.clone());
    s.history("k").map(|h| h.len()) == Some(2)
        && old.ok().as_deref() == Some("merit list published")
        && new.ok().as_deref() == Some("revised merit list published")
}

fn retention_boundary() -> bool {
    let mut s = RecordStore::in_memory();
    let mut doc = SourceDocument::new("k", DocKind::Alert, "v1", t0(), "f");
    s.upsert(&doc, t0()).unwrap();
    doc.text = "v2".into();
    s.upsert(&doc, t0() + Duration::days(10)).unwrap();
    let now = t0() + Duration::days(100);
    let early = s.prune(now - Duration::seconds(1)) == 0;
    let outside = matches!(
        s.revert("k", now - Duration::days(90) - Duration::seconds(1), now),
        Err(IngestError::OutOfRetention { .. })
    );
    let pruned = s.prune(now) == 1;
    early && outside && pruned && s.history("k").map(|h| h.len()) == Some(1)
}

fn idempotent_rerun() -> bool {
    let clock = Arc::new(SimulatedClock::new(t0()));
    let sleeper = SimulatedSleeper::new(clock.clone());
    let politeness = PolitenessPolicy::new(3);
    let env = PipelineEnv {
        provider: &HashingEmbedder,
        sleeper: &sleeper,
        politeness: &politeness,
    };
    let fetcher = FixtureDirFetcher::new(core_data().join("fixtures/ingest"));
    let mut sched = Scheduler::default();
    sched.tasks.retain(|t| t.name == "alerts");
    let mut store = RecordStore::in_memory();
    let mut kb = KnowledgeBase::new(HnswConfig::default());
    let first = run_pipeline(&mut sched, &fetcher, &mut store, &mut kb, &env, clock.now()).unwrap();
    let snapshot = kb.index().to_bytes();
    clock.advance(Duration::hours(1));
    let second = run_pipeline(&mut sched, &fetcher, &mut store, &mut kb, &env, clock.now()).unwrap();
    first.created > 0
        && (second.created, second.new_versions, second.pruned) == (0, 0, 0)
        && kb.index().to_bytes() == snapshot
}

/// Chunk invariants over 1,000 documents, versioning round trip across a
/// reopen, the 90-day retention boundary, and an idempotent rerun.
pub fn ingestion() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(847);
    let bad = chunks_ok(&mut r);
    let versions = versioning_round_trip();
    let retention = retention_boundary();
    let rerun = idempotent_rerun();
    Outcome::check(
        bad == 0 && versions && retention && rerun,
        format!("{bad} of 1000 documents break chunk invariants; versioning {versions}, retention {retention}, idempotent rerun {rerun}"),
    )
}
