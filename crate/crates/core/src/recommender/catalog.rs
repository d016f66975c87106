use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::embedding::{fnv1a64, EmbeddingProvider, EmbeddingVector};
use crate::index::{HnswConfig, HnswIndex, IndexEntry};

use super::types::JobPosting;
use super::RecommendError;

const INDEX_FILE: &str = "jobs.jsvi";
const JOBS_FILE: &str = "jobs.jsonl";

pub fn job_key(job_id: &str) -> u64 {
    fnv1a64(format!("job:{job_id}").as_bytes())
}

/// Job postings plus an ANN index over their description embeddings.
#[derive(Debug, Clone, Default)]
pub struct JobCatalog {
    index: HnswIndex,
    jobs: HashMap<u64, JobPosting>,
    ids: BTreeMap<String, u64>,
}

impl JobCatalog {
    pub fn new(config: HnswConfig) -> Self {
        Self {
            index: HnswIndex::new(config),
            jobs: HashMap::new(),
            ids: BTreeMap::new(),
        }
    }

    pub fn index(&self) -> &HnswIndex {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    pub fn get(&self, job_id: &str) -> Option<&JobPosting> {
        self.ids.get(job_id).and_then(|k| self.jobs.get(k))
    }

    pub fn by_key(&self, key: u64) -> Option<&JobPosting> {
        self.jobs.get(&key)
    }

    /// Jobs ordered by job_id.
    pub fn jobs(&self) -> impl Iterator<Item = &JobPosting> {
        self.ids.values().filter_map(|k| self.jobs.get(k))
    }

    /// Inserts or replaces; returns true when a job was replaced.
    pub fn upsert(&mut self, job: JobPosting, provider: &dyn EmbeddingProvider) -> Result<bool, RecommendError> {
        job.validate()?;
        let vector = provider.embed(&job.description).map_err(|e| RecommendError::InvalidJob {
            job_id: job.job_id.clone(),
            reason: e.to_string(),
        })?;
        self.upsert_embedded(job, vector)
    }

    pub fn upsert_embedded(&mut self, job: JobPosting, vector: EmbeddingVector) -> Result<bool, RecommendError> {
        job.validate()?;
        let key = job_key(&job.job_id);
        if let Some(existing) = self.jobs.get(&key) {
            if existing.job_id != job.job_id {
                return Err(RecommendError::InvalidJob {
                    job_id: job.job_id,
                    reason: format!("id hash collides with {}", existing.job_id),
                });
            }
        }
        let replaced = self.index.remove(key);
        self.index
            .insert(IndexEntry::new(key, vector, job.job_id.clone()))
            .map_err(|e| RecommendError::IndexUnavailable(e.to_string()))?;
        self.ids.insert(job.job_id.clone(), key);
        self.jobs.insert(key, job);
        Ok(replaced)
    }

    pub fn remove(&mut self, job_id: &str) -> bool {
        let Some(key) = self.ids.remove(job_id) else {
            return false;
        };
        self.jobs.remove(&key);
        self.index.remove(key)
    }

    /// Top-`k` jobs by cosine to `query`, with the raw cosine.
    pub fn search(&self, query: &EmbeddingVector, k: usize) -> Result<Vec<(&JobPosting, f64)>, RecommendError> {
        Ok(self
            .index
            .search(query, k)
            .map_err(|e| RecommendError::IndexUnavailable(e.to_string()))?
            .into_iter()
            .filter_map(|h| self.jobs.get(&h.id).map(|j| (j, h.score as f64)))
            .collect())
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<(), RecommendError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        self.index
            .save(dir.join(INDEX_FILE))
            .map_err(|e| RecommendError::IndexUnavailable(e.to_string()))?;
        let tmp = dir.join(format!("{JOBS_FILE}.tmp"));
        let mut w = BufWriter::new(File::create(&tmp)?);
        for job in self.jobs() {
            serde_json::to_writer(&mut w, job).map_err(|e| RecommendError::Config(e.to_string()))?;
            w.write_all(b"\n")?;
        }
        w.into_inner().map_err(|e| e.into_error())?.sync_all()?;
        fs::rename(tmp, dir.join(JOBS_FILE))?;
        Ok(())
    }

    pub fn exists(dir: impl AsRef<Path>) -> bool {
        dir.as_ref().join(JOBS_FILE).exists() && dir.as_ref().join(INDEX_FILE).exists()
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self, RecommendError> {
        let dir = dir.as_ref();
        let index = HnswIndex::load(dir.join(INDEX_FILE)).map_err(|e| RecommendError::IndexUnavailable(e.to_string()))?;
        let mut jobs = HashMap::new();
        let mut ids = BTreeMap::new();
        for line in BufReader::new(File::open(dir.join(JOBS_FILE))?).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let job: JobPosting = serde_json::from_str(&line).map_err(|e| RecommendError::Config(e.to_string()))?;
            let key = job_key(&job.job_id);
            if !index.contains(key) {
                return Err(RecommendError::IndexUnavailable(format!("job {} missing from index", job.job_id)));
            }
            ids.insert(job.job_id.clone(), key);
            jobs.insert(key, job);
        }
        if jobs.len() != index.len() {
            return Err(RecommendError::IndexUnavailable(format!(
                "index holds {} entries but {} jobs were stored",
                index.len(),
                jobs.len()
            )));
        }
        Ok(Self { index, jobs, ids })
    }
}
