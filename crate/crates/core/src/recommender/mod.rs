//! Job recommendation: embedding retrieval of candidates, component
//! re-ranking, eligibility filter, logistic apply probability and greedy
//! diversification.

mod catalog;
mod diversify;
mod logistic;
mod scoring;
mod types;

use std::sync::Arc;

use chrono::{DateTime, Utc};
use thiserror::Error;

pub use catalog::{job_key, JobCatalog};
pub use diversify::{diversify, objective};
pub use logistic::{apply_probability, fit_logistic, parse_interaction_log, FitOptions, InteractionRow};
pub use scoring::{
    age_days, check_eligibility, haversine_km, jaccard, location_score, location_score_km, recency_score,
    salary_score, semantic_score, sigmoid, EARTH_RADIUS_KM, LOCATION_DECAY_KM, LOCATION_RADIUS_KM,
    RECENCY_HALF_LIFE_DAYS,
};
pub use types::{
    Beta, CandidateProfile, EducationLevel, Explanation, GeoPoint, JobLocation, JobPosting, Preferences, RankWeights,
    ScoredJob,
};

use crate::embedding::EmbeddingProvider;

pub const CANDIDATE_POOL: usize = 100;
pub const DEFAULT_TOP_K: usize = 10;

#[derive(Debug, Error)]
pub enum RecommendError {
    #[error("index unavailable: {0}")]
    IndexUnavailable(String),
    #[error("invalid coordinate ({lat}, {lon})")]
    InvalidCoordinate { lat: f64, lon: f64 },
    #[error("job posted at {posted_at} is after {now}")]
    FuturePostDate { posted_at: DateTime<Utc>, now: DateTime<Utc> },
    #[error("invalid job {job_id}: {reason}")]
    InvalidJob { job_id: String, reason: String },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Optional narrowing applied after the eligibility filter.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct JobFilter {
    /// Case-insensitive location name.
    pub location: Option<String>,
    /// Keep jobs whose salary_max reaches this.
    pub min_salary: Option<f64>,
    /// Case-insensitive category.
    pub category: Option<String>,
}

impl JobFilter {
    pub fn is_empty(&self) -> bool {
        self.location.is_none() && self.min_salary.is_none() && self.category.is_none()
    }

    pub fn accepts(&self, job: &JobPosting) -> bool {
        self.location
            .as_deref()
            .is_none_or(|l| job.location.name.eq_ignore_ascii_case(l.trim()))
            && self.min_salary.is_none_or(|s| job.salary_max >= s)
            && self
                .category
                .as_deref()
                .is_none_or(|c| job.category.eq_ignore_ascii_case(c.trim()))
    }
}

pub struct Recommender {
    catalog: JobCatalog,
    weights: RankWeights,
    provider: Arc<dyn EmbeddingProvider>,
}

impl Recommender {
    pub fn new(catalog: JobCatalog, weights: RankWeights, provider: Arc<dyn EmbeddingProvider>) -> Self {
        Self {
            catalog,
            weights,
            provider,
        }
    }

    pub fn catalog(&self) -> &JobCatalog {
        &self.catalog
    }

    pub fn catalog_mut(&mut self) -> &mut JobCatalog {
        &mut self.catalog
    }

    pub fn weights(&self) -> &RankWeights {
        &self.weights
    }

    pub fn set_weights(&mut self, weights: RankWeights) -> Result<(), RecommendError> {
        weights.validate()?;
        self.weights = weights;
        Ok(())
    }

    pub fn add_job(&mut self, job: JobPosting) -> Result<bool, RecommendError> {
        self.catalog.upsert(job, self.provider.as_ref())
    }

    /// Up to 100 (job_id, s_sem) pairs by cosine to the profile text.
    pub fn retrieve_candidates(&self, profile: &CandidateProfile) -> Result<Vec<(String, f64)>, RecommendError> {
        Ok(self
            .candidates(profile)?
            .into_iter()
            .map(|(j, s)| (j.job_id.clone(), s))
            .collect())
    }

    fn candidates(&self, profile: &CandidateProfile) -> Result<Vec<(&JobPosting, f64)>, RecommendError> {
        if profile.profile_text.trim().is_empty() {
            return Err(RecommendError::InvalidProfile("profile_text is empty".into()));
        }
        let q = self
            .provider
            .embed(&profile.profile_text)
            .map_err(|e| RecommendError::InvalidProfile(e.to_string()))?;
        Ok(self
            .catalog
            .search(&q, CANDIDATE_POOL)?
            .into_iter()
            .map(|(j, cos)| (j, semantic_score(cos)))
            .collect())
    }

    pub fn score_job(
        &self,
        profile: &CandidateProfile,
        job: &JobPosting,
        s_sem: f64,
        now: DateTime<Utc>,
    ) -> Result<ScoredJob, RecommendError> {
        score_job(profile, job, s_sem, now, &self.weights)
    }

    pub fn recommend(
        &self,
        profile: &CandidateProfile,
        now: DateTime<Utc>,
        k: usize,
    ) -> Result<Vec<ScoredJob>, RecommendError> {
        self.recommend_filtered(profile, now, k, &JobFilter::default())
    }

    pub fn recommend_filtered(
        &self,
        profile: &CandidateProfile,
        now: DateTime<Utc>,
        k: usize,
        filter: &JobFilter,
    ) -> Result<Vec<ScoredJob>, RecommendError> {
        profile.validate()?;
        let mut pool = Vec::new();
        for (job, s_sem) in self.candidates(profile)? {
            if !filter.accepts(job) {
                continue;
            }
            match score_job(profile, job, s_sem, now, &self.weights) {
                Ok(s) if s.eligible => pool.push(s),
                Ok(_) | Err(RecommendError::FuturePostDate { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(diversify(&pool, k, self.weights.lambda_div))
    }
}

pub fn score_job(
    profile: &CandidateProfile,
    job: &JobPosting,
    s_sem: f64,
    now: DateTime<Utc>,
    weights: &RankWeights,
) -> Result<ScoredJob, RecommendError> {
    let s_skill = jaccard(&profile.skills, &job.required_skills);
    let distance_km = haversine_km(profile.home, job.location.point())?;
    let s_loc = location_score_km(distance_km);
    let s_sal = salary_score(profile, job);
    let days = age_days(job.posted_at, now)?;
    let s_rec = (-days / RECENCY_HALF_LIFE_DAYS).exp2();
    let s_sem = s_sem.clamp(0.0, 1.0);
    let components = [s_sem, s_skill, s_loc, s_sal, s_rec];
    let relevance = components
        .iter()
        .zip(weights.components())
        .map(|(s, w)| s * w)
        .sum::<f64>()
        .clamp(0.0, 1.0);
    let p_apply = apply_probability(components, &weights.beta);
    let matched: Vec<String> = profile.skills.intersection(&job.required_skills).cloned().collect();
    let missing: Vec<String> = job.required_skills.difference(&profile.skills).cloned().collect();
    let summary = format!(
        "skills {}/{} matched, {:.0} km away, posted {:.1} days ago, salary fit {:.2}, profile similarity {:.2}",
        matched.len(),
        job.required_skills.len(),
        distance_km,
        days,
        s_sal,
        s_sem
    );
    Ok(ScoredJob {
        job_id: job.job_id.clone(),
        s_sem,
        s_skill,
        s_loc,
        s_sal,
        s_rec,
        eligible: check_eligibility(profile, job),
        relevance,
        p_apply,
        category: job.category.clone(),
        location_name: job.location.name.clone(),
        department: job.department.clone(),
        explanation: Explanation {
            matched_skills: matched,
            missing_skills: missing,
            distance_km,
            age_days: days,
            summary,
        },
    })
}
