use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use chrono::{DateTime, Duration, Utc};
use parking_lot::{Mutex, RwLock};
use serde::Serialize;

use jobsphere_core::clock::Clock;
use jobsphere_core::corpus::KnowledgeBase;
use jobsphere_core::embedding::{EmbeddingProvider, HashingEmbedder};
use jobsphere_core::fixtures;
use jobsphere_core::ingestion::SourceDocument;
use jobsphere_core::index::HnswConfig;
use jobsphere_core::mocktest::QuestionBank;
use jobsphere_core::recommender::{JobCatalog, JobPosting, RankWeights, Recommender};
use jobsphere_core::resume::ParsedResume;
use jobsphere_core::retrieval::RetrievalEngine;
use jobsphere_core::synth;

use crate::auth::TokenService;
use crate::config::ServerConfig;
use crate::limit::RateLimiter;
use crate::store::Db;

pub const DEMO_JOBS: usize = 300;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ResumeJob {
    Pending,
    Done { result: ParsedResume },
    Failed { error: String },
}

pub struct AppState {
    pub config: ServerConfig,
    pub clock: Arc<dyn Clock>,
    pub tokens: TokenService,
    pub limiter: RateLimiter,
    pub db: Mutex<Db>,
    pub retrieval: RetrievalEngine,
    pub recommender: Recommender,
    pub bank: QuestionBank,
    /// parse_job_id -> (owner, state). Not persisted.
    pub resume_jobs: Mutex<HashMap<String, (String, ResumeJob)>>,
}

pub fn load_jobs(path: &Path) -> std::io::Result<Vec<JobPosting>> {
    let mut out = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line).map_err(std::io::Error::other)?);
        }
    }
    Ok(out)
}

pub fn save_jobs(path: &Path, jobs: &[JobPosting]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for j in jobs {
        serde_json::to_writer(&mut w, j)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

/// Bundled knowledge documents: the fixture corpus plus one explanation
/// document per question-bank entry.
pub fn seed_documents(bank: &QuestionBank, now: DateTime<Utc>) -> Vec<SourceDocument> {
    let mut docs = fixtures::knowledge_documents();
    docs.extend(bank.explanation_documents("question_bank.txt", now));
    docs
}

/// Loads `dir/kb`, seeding it from [`seed_documents`] on first use.
pub fn open_knowledge(
    dir: &Path,
    provider: &dyn EmbeddingProvider,
    bank: &QuestionBank,
    config: HnswConfig,
    now: DateTime<Utc>,
) -> anyhow::Result<KnowledgeBase> {
    let kb_dir = dir.join("kb");
    if KnowledgeBase::exists(&kb_dir) {
        return Ok(KnowledgeBase::load(&kb_dir)?);
    }
    let mut kb = KnowledgeBase::new(config);
    for d in seed_documents(bank, now) {
        kb.add_document(&d, provider)?;
    }
    kb.save(&kb_dir)?;
    Ok(kb)
}

/// Loads `dir/jobs.jsonl`, writing a seeded demo catalog on first use.
pub fn open_jobs(dir: &Path, seed: u64, now: DateTime<Utc>) -> anyhow::Result<Vec<JobPosting>> {
    let path = dir.join("jobs.jsonl");
    if path.exists() {
        return Ok(load_jobs(&path)?);
    }
    let jobs = synth::random_jobs(DEMO_JOBS, seed, now);
    save_jobs(&path, &jobs)?;
    Ok(jobs)
}

/// `path` if it exists, the defaults otherwise.
pub fn open_weights(path: &Path) -> anyhow::Result<RankWeights> {
    if path.exists() {
        Ok(RankWeights::from_json(&fs::read_to_string(path)?)?)
    } else {
        Ok(RankWeights::default())
    }
}

pub fn build_recommender(
    jobs: Vec<JobPosting>,
    weights: RankWeights,
    provider: Arc<dyn EmbeddingProvider>,
    config: HnswConfig,
) -> anyhow::Result<Recommender> {
    let mut recommender = Recommender::new(JobCatalog::new(config), weights, provider);
    for j in jobs {
        recommender.add_job(j)?;
    }
    Ok(recommender)
}

impl AppState {
    /// Opens or seeds everything under `config.data_dir`: the knowledge base,
    /// the job catalog, and the account/activity logs.
    pub fn open(config: ServerConfig, clock: Arc<dyn Clock>) -> anyhow::Result<Arc<Self>> {
        let dir = config.data_dir.clone();
        fs::create_dir_all(&dir)?;
        let provider: Arc<dyn EmbeddingProvider> = Arc::new(HashingEmbedder);
        let bank = fixtures::question_bank(provider.as_ref())?;
        let now = clock.now();
        let kb = open_knowledge(&dir, provider.as_ref(), &bank, HnswConfig::default(), now)?;
        let jobs = open_jobs(&dir, config.seed, now)?;
        let weights = open_weights(&dir.join("rank_weights.json"))?;
        let recommender = build_recommender(jobs, weights, provider.clone(), HnswConfig::default())?;

        let (db, revoked) = Db::open(dir.join("state"))?;
        let tokens = TokenService::new(&config.secret_key, Duration::hours(config.token_ttl_hours), clock.clone());
        for (jti, exp) in revoked {
            tokens.blacklist.insert(&jti, exp);
        }
        tokens.blacklist.purge(clock.now());

        let retrieval = RetrievalEngine::new(provider, Arc::new(RwLock::new(kb)), clock.clone());
        Ok(Arc::new(Self {
            limiter: RateLimiter::new(config.rate_limit, Duration::seconds(config.rate_window_secs)),
            config,
            clock,
            tokens,
            db: Mutex::new(db),
            retrieval,
            recommender,
            bank,
            resume_jobs: Mutex::new(HashMap::new()),
        }))
    }
}
