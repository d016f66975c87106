//! Query answering: language detection, translation contract, top-k
//! retrieval, extractive composition with citations, TTL cache.

mod cache;
mod compose;
mod language;

use std::sync::Arc;

use chrono::Duration;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cache::{normalize_query, CacheKey, QueryCache, DEFAULT_TTL_SECS};
pub use compose::{
    lead_sentence, split_sentences, ungrounded_lines, AnswerComposer, Citation, Composed,
    ExtractiveComposer, NO_ANSWER_TEXT,
};
pub use language::{detect_language, LanguageTag};

use crate::clock::Clock;
use crate::corpus::KnowledgeBase;
use crate::embedding::{EmbeddingError, EmbeddingProvider};

#[derive(Debug, Error)]
pub enum RetrievalError {
    #[error("text is empty")]
    EmptyText,
    #[error("index unavailable: {0}")]
    IndexUnavailable(String),
    #[error("translator unavailable: {0}")]
    TranslatorUnavailable(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundedAnswer {
    pub text: String,
    pub citations: Vec<Citation>,
    pub language: LanguageTag,
    pub cached: bool,
    pub answered: bool,
}

/// Pluggable translation. Implementations must be deterministic and return
/// non-empty output for non-empty input.
pub trait Translator: Send + Sync {
    fn name(&self) -> &str;

    fn translate(&self, text: &str, from: LanguageTag, to: LanguageTag) -> Result<String, RetrievalError>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityTranslator;

impl Translator for IdentityTranslator {
    fn name(&self) -> &str {
        "identity"
    }

    fn translate(&self, text: &str, _from: LanguageTag, _to: LanguageTag) -> Result<String, RetrievalError> {
        Ok(text.to_string())
    }
}

/// Calls a plugin while enforcing the contract: same-language calls never
/// reach the plugin, and empty output for non-empty input is an error.
pub fn translate(
    translator: &dyn Translator,
    text: &str,
    from: LanguageTag,
    to: LanguageTag,
) -> Result<String, RetrievalError> {
    if from == to || text.is_empty() {
        return Ok(text.to_string());
    }
    let out = translator.translate(text, from, to)?;
    if out.trim().is_empty() && !text.trim().is_empty() {
        return Err(RetrievalError::TranslatorUnavailable(format!(
            "{} returned empty output for {from}->{to}",
            translator.name()
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetrievalConfig {
    pub top_k: usize,
    pub grounding_threshold: f32,
    pub cache_capacity: usize,
    pub cache_ttl_secs: i64,
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        Self {
            top_k: 5,
            grounding_threshold: 0.25,
            cache_capacity: 1024,
            cache_ttl_secs: DEFAULT_TTL_SECS,
        }
    }
}

pub type SharedKnowledge = Arc<RwLock<KnowledgeBase>>;

pub struct RetrievalEngine {
    provider: Arc<dyn EmbeddingProvider>,
    translator: Arc<dyn Translator>,
    composer: Arc<dyn AnswerComposer>,
    knowledge: SharedKnowledge,
    cache: QueryCache,
    config: RetrievalConfig,
}

impl RetrievalEngine {
    /// Identity translation and the extractive composer.
    pub fn new(provider: Arc<dyn EmbeddingProvider>, knowledge: SharedKnowledge, clock: Arc<dyn Clock>) -> Self {
        Self::with_parts(
            provider.clone(),
            Arc::new(IdentityTranslator),
            Arc::new(ExtractiveComposer::new(provider)),
            knowledge,
            clock,
            RetrievalConfig::default(),
        )
    }

    pub fn with_parts(
        provider: Arc<dyn EmbeddingProvider>,
        translator: Arc<dyn Translator>,
        composer: Arc<dyn AnswerComposer>,
        knowledge: SharedKnowledge,
        clock: Arc<dyn Clock>,
        config: RetrievalConfig,
    ) -> Self {
        let cache = QueryCache::new(config.cache_capacity, Duration::seconds(config.cache_ttl_secs), clock);
        Self {
            provider,
            translator,
            composer,
            knowledge,
            cache,
            config,
        }
    }

    pub fn knowledge(&self) -> &SharedKnowledge {
        &self.knowledge
    }

    pub fn cache(&self) -> &QueryCache {
        &self.cache
    }

    pub fn config(&self) -> RetrievalConfig {
        self.config
    }

    pub fn provider(&self) -> &Arc<dyn EmbeddingProvider> {
        &self.provider
    }

    /// Drop cached answers, e.g. after the corpus changed.
    pub fn invalidate_cache(&self) {
        self.cache.clear();
    }

    pub fn answer_query(&self, query: &str, lang_hint: Option<LanguageTag>) -> Result<GroundedAnswer, RetrievalError> {
        if query.trim().is_empty() {
            return Err(RetrievalError::EmptyText);
        }
        let language = match lang_hint {
            Some(l) => l,
            None => detect_language(query)?,
        };
        let key = CacheKey::new(query, language);
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit);
        }
        let answer = self.answer_uncached(query, language)?;
        self.cache.put(key, answer.clone());
        Ok(answer)
    }

    fn answer_uncached(&self, query: &str, language: LanguageTag) -> Result<GroundedAnswer, RetrievalError> {
        let english = translate(self.translator.as_ref(), query, language, LanguageTag::En)?;
        let qv = self.provider.embed(&english).map_err(|e| match e {
            EmbeddingError::EmptyText => RetrievalError::EmptyText,
            other => RetrievalError::IndexUnavailable(other.to_string()),
        })?;
        let kb = self.knowledge.read();
        let hits = kb
            .search(&qv, self.config.top_k)
            .map_err(|e| RetrievalError::IndexUnavailable(e.to_string()))?;
        let grounded = hits
            .first()
            .is_some_and(|(h, _)| h.score >= self.config.grounding_threshold);
        let composed = if grounded {
            self.composer.compose(&english, &hits)
        } else {
            Composed {
                text: NO_ANSWER_TEXT.to_string(),
                citations: Vec::new(),
            }
        };
        drop(kb);
        let mut citations = composed.citations;
        citations.truncate(self.config.top_k);
        let answered = !citations.is_empty();
        let text = translate(self.translator.as_ref(), &composed.text, LanguageTag::En, language)?;
        Ok(GroundedAnswer {
            text,
            citations,
            language,
            cached: false,
            answered,
        })
    }

    /// Lines of an answer not traceable to its citations; empty for every
    /// answer the extractive composer produces.
    pub fn ungrounded_lines<'a>(&self, answer: &'a GroundedAnswer) -> Vec<&'a str> {
        if !answer.answered {
            return Vec::new();
        }
        let kb = self.knowledge.read();
        let lookup = |chunk_id: &str| kb.chunk(crate::corpus::chunk_key(chunk_id)).map(|c| c.text.clone());
        ungrounded_lines(&answer.text, &answer.citations, lookup)
    }
}
