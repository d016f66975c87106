//! Browser demo: the engine compiled to wasm, answering questions,
//! ranking jobs under adjustable weights, and assembling mock tests.
//!
//! Every export takes and returns JSON strings; `www/main.js` parses them.

use std::sync::Arc;

use chrono::{DateTime, TimeZone, Utc};
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use jobsphere_core::clock::SimulatedClock;
use jobsphere_core::corpus::KnowledgeBase;
use jobsphere_core::embedding::{EmbeddingProvider, HashingEmbedder};
use jobsphere_core::fixtures;
use jobsphere_core::index::HnswConfig;
use jobsphere_core::mocktest::{assemble_test, Blueprint, QuestionBank};
use jobsphere_core::recommender::{CandidateProfile, JobCatalog, JobFilter, RankWeights, Recommender};
use jobsphere_core::retrieval::{LanguageTag, RetrievalEngine};
use jobsphere_core::synth;

pub const DEMO_JOBS: usize = 300;

/// Slider positions; any nonnegative scale, normalized before use.
#[derive(Debug, Clone, Copy, Deserialize)]
pub struct Sliders {
    pub sem: f64,
    pub skill: f64,
    pub loc: f64,
    pub sal: f64,
    pub rec: f64,
    pub lambda: f64,
}

#[derive(Debug, Serialize)]
pub struct Ranked {
    pub job_id: String,
    pub title: String,
    pub category: String,
    pub location: String,
    pub relevance: f64,
    pub p_apply: f64,
    pub summary: String,
}

pub fn weights_from(base: &RankWeights, s: Sliders) -> Result<RankWeights, String> {
    let raw = [s.sem, s.skill, s.loc, s.sal, s.rec];
    if raw.iter().chain([&s.lambda]).any(|x| !x.is_finite() || *x < 0.0) {
        return Err("sliders must be nonnegative".into());
    }
    let sum: f64 = raw.iter().sum();
    if sum <= 0.0 {
        return Err("at least one weight must be above zero".into());
    }
    let w = RankWeights {
        w_sem: s.sem / sum,
        w_skill: s.skill / sum,
        w_loc: s.loc / sum,
        w_sal: s.sal / sum,
        w_rec: s.rec / sum,
        lambda_div: s.lambda,
        beta: base.beta,
    };
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}

pub struct Engine {
    now: DateTime<Utc>,
    retrieval: RetrievalEngine,
    recommender: Recommender,
    bank: QuestionBank,
}

impl Engine {
    pub fn new(now: DateTime<Utc>, seed: u64) -> Result<Self, String> {
        let provider: Arc<dyn EmbeddingProvider> = Arc::new(HashingEmbedder);
        let bank = fixtures::question_bank(provider.as_ref()).map_err(|e| e.to_string())?;
        let mut kb = KnowledgeBase::new(HnswConfig::default());
        for d in fixtures::knowledge_documents().iter().chain(&bank.explanation_documents("question_bank.txt", now)) {
            kb.add_document(d, provider.as_ref()).map_err(|e| e.to_string())?;
        }
        let mut recommender = Recommender::new(JobCatalog::new(HnswConfig::default()), RankWeights::default(), provider.clone());
        for j in synth::random_jobs(DEMO_JOBS, seed, now) {
            recommender.add_job(j).map_err(|e| e.to_string())?;
        }
        let clock = Arc::new(SimulatedClock::new(now));
        Ok(Self {
            now,
            retrieval: RetrievalEngine::new(provider, Arc::new(RwLock::new(kb)), clock),
            recommender,
            bank,
        })
    }

    pub fn ask(&self, text: &str, lang: &str) -> Result<String, String> {
        let hint = match lang {
            "" | "auto" => None,
            l => Some(l.parse::<LanguageTag>().map_err(|e| e.to_string())?),
        };
        let a = self.retrieval.answer_query(text, hint).map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&a).expect("answer serializes"))
    }

    pub fn recommend(&mut self, profile: &str, sliders: &str, top: usize) -> Result<String, String> {
        let profile: CandidateProfile = serde_json::from_str(profile).map_err(|e| format!("profile: {e}"))?;
        let sliders: Sliders = serde_json::from_str(sliders).map_err(|e| format!("sliders: {e}"))?;
        let w = weights_from(self.recommender.weights(), sliders)?;
        self.recommender.set_weights(w).map_err(|e| e.to_string())?;
        let scored = self
            .recommender
            .recommend_filtered(&profile, self.now, top.clamp(1, 50), &JobFilter::default())
            .map_err(|e| e.to_string())?;
        let out: Vec<Ranked> = scored
            .into_iter()
            .map(|s| Ranked {
                title: self.recommender.catalog().get(&s.job_id).map(|j| j.title.clone()).unwrap_or_default(),
                job_id: s.job_id,
                category: s.category,
                location: s.location_name,
                relevance: s.relevance,
                p_apply: s.p_apply,
                summary: s.explanation.summary,
            })
            .collect();
        Ok(serde_json::to_string(&out).expect("ranking serializes"))
    }

    pub fn assemble(&self, blueprint: &str, seed: u64) -> Result<String, String> {
        let bp: Blueprint = serde_json::from_str(blueprint).map_err(|e| format!("blueprint: {e}"))?;
        let test = assemble_test(&self.bank.questions, &bp, seed).map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&test.public_view()).expect("test serializes"))
    }
}

#[wasm_bindgen]
pub struct Demo(Engine);

#[wasm_bindgen]
impl Demo {
    /// `now_ms` is `Date.now()` from the page.
    #[wasm_bindgen(constructor)]
    pub fn new(now_ms: f64, seed: u32) -> Result<Demo, JsError> {
        let now = Utc
            .timestamp_millis_opt(now_ms as i64)
            .single()
            .ok_or_else(|| JsError::new("bad timestamp"))?;
        Engine::new(now, seed as u64).map(Demo).map_err(|e| JsError::new(&e))
    }

    pub fn ask(&self, text: &str, lang: &str) -> Result<String, JsError> {
        self.0.ask(text, lang).map_err(|e| JsError::new(&e))
    }

    pub fn recommend(&mut self, profile: &str, sliders: &str, top: u32) -> Result<String, JsError> {
        self.0.recommend(profile, sliders, top as usize).map_err(|e| JsError::new(&e))
    }

    pub fn assemble(&self, blueprint: &str, seed: u32) -> Result<String, JsError> {
        self.0.assemble(blueprint, seed as u64).map_err(|e| JsError::new(&e))
    }
}
