use std::sync::Arc;
use std::time::Duration;

use chrono::{DateTime, Utc};
use parking_lot::Mutex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{chunk_document, content_hash, Fetcher, IngestError, RecordStore, Scheduler, SourceDocument, UpsertOutcome};
use crate::clock::SimulatedClock;
use crate::corpus::KnowledgeBase;
use crate::embedding::EmbeddingProvider;

pub trait Sleeper: Send + Sync {
    fn sleep(&self, d: Duration);
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ThreadSleeper;

impl Sleeper for ThreadSleeper {
    fn sleep(&self, d: Duration) {
        std::thread::sleep(d);
    }
}

/// Advances a simulated clock instead of blocking, and records each delay.
#[derive(Debug)]
pub struct SimulatedSleeper {
    clock: Arc<SimulatedClock>,
    delays: Mutex<Vec<Duration>>,
}

impl SimulatedSleeper {
    pub fn new(clock: Arc<SimulatedClock>) -> Self {
        Self {
            clock,
            delays: Mutex::new(Vec::new()),
        }
    }

    pub fn delays(&self) -> Vec<Duration> {
        self.delays.lock().clone()
    }
}

impl Sleeper for SimulatedSleeper {
    fn sleep(&self, d: Duration) {
        self.clock
            .advance(chrono::Duration::from_std(d).expect("delay fits chrono range"));
        self.delays.lock().push(d);
    }
}

/// Uniform random delay between item fetches, 2-10 s by default.
#[derive(Debug)]
pub struct PolitenessPolicy {
    pub min: Duration,
    pub max: Duration,
    rng: Mutex<ChaCha8Rng>,
}

impl PolitenessPolicy {
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(Duration::from_secs(2), Duration::from_secs(10), seed)
    }

    pub fn with_bounds(min: Duration, max: Duration, seed: u64) -> Self {
        assert!(min <= max, "politeness bounds reversed");
        Self {
            min,
            max,
            rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    pub fn sample(&self) -> Duration {
        let (lo, hi) = (self.min.as_millis() as u64, self.max.as_millis() as u64);
        Duration::from_millis(self.rng.lock().random_range(lo..=hi))
    }
}

pub struct PipelineEnv<'a> {
    pub provider: &'a dyn EmbeddingProvider,
    pub sleeper: &'a dyn Sleeper,
    pub politeness: &'a PolitenessPolicy,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub fetched: usize,
    pub created: usize,
    pub skipped: usize,
    pub new_versions: usize,
    pub errors: usize,
    pub pruned: usize,
    pub tasks_run: Vec<String>,
    pub error_messages: Vec<String>,
}

/// Upserts into the store and keeps the knowledge base in step. Skipped
/// documents touch neither.
pub fn upsert_record(
    store: &mut RecordStore,
    kb: &mut KnowledgeBase,
    provider: &dyn EmbeddingProvider,
    doc: &SourceDocument,
    now: DateTime<Utc>,
) -> Result<UpsertOutcome, IngestError> {
    doc.validate()?;
    let hash = content_hash(doc);
    if store.latest(&doc.doc_id).is_some_and(|r| r.content_hash == hash) {
        return Ok(UpsertOutcome::Skipped);
    }
    let chunks = chunk_document(doc, provider)?;
    let outcome = store.upsert_hashed(doc, hash, now)?;
    kb.replace_document(doc, chunks)?;
    Ok(outcome)
}

/// Fires every due task, fetching its items with a politeness delay between
/// consecutive fetches. Per-item failures are counted, not propagated.
pub fn run_pipeline(
    scheduler: &mut Scheduler,
    fetcher: &dyn Fetcher,
    store: &mut RecordStore,
    kb: &mut KnowledgeBase,
    env: &PipelineEnv<'_>,
    now: DateTime<Utc>,
) -> Result<IngestReport, IngestError> {
    let mut report = IngestReport::default();
    let mut first_fetch = true;
    for ti in scheduler.due_indices(now) {
        let task = scheduler.tasks[ti].clone();
        report.tasks_run.push(task.name.clone());
        let items = match fetcher.list(&task) {
            Ok(items) => items,
            Err(e) => {
                report.errors += 1;
                report.error_messages.push(e.to_string());
                continue;
            }
        };
        for locator in items {
            if !first_fetch {
                env.sleeper.sleep(env.politeness.sample());
            }
            first_fetch = false;
            report.fetched += 1;
            let doc = match fetcher.fetch(&locator) {
                Ok(doc) => doc,
                Err(e) => {
                    report.errors += 1;
                    report.error_messages.push(e.to_string());
                    continue;
                }
            };
            match upsert_record(store, kb, env.provider, &doc, now) {
                Ok(UpsertOutcome::Created) => report.created += 1,
                Ok(UpsertOutcome::NewVersion) => report.new_versions += 1,
                Ok(UpsertOutcome::Skipped) => report.skipped += 1,
                Err(e @ (IngestError::InvalidDocument(_) | IngestError::EmptyDocument)) => {
                    report.errors += 1;
                    report.error_messages.push(format!("{locator}: {e}"));
                }
                Err(e) => return Err(e),
            }
        }
        scheduler.tasks[ti].last_run = Some(now);
    }
    report.pruned = store.prune(now);
    if report.created + report.new_versions + report.pruned > 0 {
        store.checkpoint()?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn politeness_samples_stay_in_bounds() {
        let p = PolitenessPolicy::new(9);
        for _ in 0..1000 {
            let d = p.sample();
            assert!(d >= Duration::from_secs(2) && d <= Duration::from_secs(10));
        }
    }

    #[test]
    fn simulated_sleeper_advances_clock() {
        use crate::clock::Clock;
        let clock = Arc::new(SimulatedClock::at_epoch());
        let s = SimulatedSleeper::new(clock.clone());
        let t0 = clock.now();
        s.sleep(Duration::from_secs(3));
        assert_eq!((clock.now() - t0).num_seconds(), 3);
        assert_eq!(s.delays().len(), 1);
    }
}
