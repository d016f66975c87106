//! Question banks, mock-test assembly and grading.
//!
//! Banks are parsed from plain text (see [`parse`] for the grammar), each
//! question gets a topic, a 1..5 difficulty and an embedding. Assembly picks
//! a seeded random subset meeting a per-topic blueprint, rejects
//! near-duplicates and orders by ascending difficulty.

mod assemble;
mod difficulty;
mod grade;
pub mod parse;
mod topic;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{EmbeddingError, EmbeddingProvider, EmbeddingVector};
use crate::ingestion::{DocKind, SourceDocument};

pub use assemble::{assemble_test, Blueprint, MockTest, PublicQuestion, PublicTest, TopicQuota};
pub use difficulty::{estimate_difficulty, text_difficulty, word_stats};
pub use grade::{
    grade, Explainer, GradeReport, NoExplainer, QuestionExplanation, QuestionResult, TestSubmission,
    NO_EXPLANATION_TEXT,
};
pub use topic::{classify_topic, KeywordTopicClassifier, Topic, TopicClassifier};

pub const MCQ_SECONDS: u32 = 90;
pub const DESCRIPTIVE_SECONDS: u32 = 300;
/// Two questions at or above this cosine count as duplicates.
pub const DUPLICATE_COSINE: f64 = 0.85;

#[derive(Debug, Error)]
pub enum MockTestError {
    #[error("no questions found in bank")]
    NoQuestionsFound,
    #[error("insufficient {kind} questions for {topic}: {available} available, {requested} requested")]
    InsufficientQuestions {
        topic: Topic,
        kind: QuestionKind,
        available: usize,
        requested: usize,
    },
    #[error("invalid blueprint: {0}")]
    InvalidBlueprint(String),
    #[error("unknown test {0}")]
    UnknownTest(String),
    #[error("question {q_id} is not part of test {test_id}")]
    ForeignQuestion { q_id: String, test_id: String },
    #[error("invalid submission: {0}")]
    InvalidSubmission(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionKind {
    Mcq,
    Descriptive,
}

impl QuestionKind {
    pub fn seconds(self) -> u32 {
        match self {
            QuestionKind::Mcq => MCQ_SECONDS,
            QuestionKind::Descriptive => DESCRIPTIVE_SECONDS,
        }
    }
}

impl std::fmt::Display for QuestionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QuestionKind::Mcq => "mcq",
            QuestionKind::Descriptive => "descriptive",
        })
    }
}

/// Historical answer rates for one question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionStats {
    pub attempts: u32,
    pub correct: u32,
}

impl QuestionStats {
    pub fn correct_rate(&self) -> Option<f64> {
        (self.attempts > 0).then(|| self.correct.min(self.attempts) as f64 / self.attempts as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Question {
    pub q_id: String,
    pub text: String,
    pub kind: QuestionKind,
    pub options: Vec<String>,
    pub answer_key: Option<char>,
    pub topic: Topic,
    pub difficulty: u8,
    #[serde(skip, default = "EmbeddingVector::zeros")]
    pub embedding: EmbeddingVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<QuestionStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_answer: Option<String>,
}

impl Question {
    /// Stem plus options; what topic and embedding are computed from.
    pub fn full_text(&self) -> String {
        let mut s = self.text.clone();
        for (i, o) in self.options.iter().enumerate() {
            s.push_str(&format!(" ({}) {o}", (b'A' + i as u8) as char));
        }
        s
    }

    pub fn key_text(&self) -> Option<&str> {
        let k = self.answer_key?;
        self.options.get((k as u8).checked_sub(b'A')? as usize).map(String::as_str)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(1..=5).contains(&self.difficulty) {
            return Err(format!("{}: difficulty {} outside 1..5", self.q_id, self.difficulty));
        }
        match self.kind {
            QuestionKind::Mcq => {
                let distinct: std::collections::HashSet<_> = self.options.iter().collect();
                if self.options.len() != 4 || distinct.len() != 4 {
                    return Err(format!("{}: mcq needs 4 distinct options", self.q_id));
                }
                if !matches!(self.answer_key, Some('A'..='D')) {
                    return Err(format!("{}: mcq key must be A-D", self.q_id));
                }
            }
            QuestionKind::Descriptive => {
                if !self.options.is_empty() || self.answer_key.is_some() {
                    return Err(format!("{}: descriptive question with options or key", self.q_id));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct QuestionBank {
    pub questions: Vec<Question>,
    pub warnings: Vec<String>,
}

impl QuestionBank {
    pub fn parse(text: &str, provider: &dyn EmbeddingProvider) -> Result<Self, MockTestError> {
        Self::parse_with(text, provider, &KeywordTopicClassifier)
    }

    pub fn parse_with(
        text: &str,
        provider: &dyn EmbeddingProvider,
        classifier: &dyn TopicClassifier,
    ) -> Result<Self, MockTestError> {
        let raw = parse::parse_raw(text);
        if raw.questions.is_empty() {
            return Err(MockTestError::NoQuestionsFound);
        }
        let mut questions = Vec::with_capacity(raw.questions.len());
        for r in raw.questions {
            let kind = if r.options.is_empty() { QuestionKind::Descriptive } else { QuestionKind::Mcq };
            let mut q = Question {
                q_id: r.q_id,
                text: r.text,
                kind,
                options: r.options,
                answer_key: r.answer_key,
                topic: Topic::Gk,
                difficulty: 1,
                embedding: EmbeddingVector::zeros(),
                stats: r.stats,
                explanation: r.explanation,
                reference_answer: r.reference_answer,
            };
            let full = q.full_text();
            q.topic = classifier.classify(&full);
            q.difficulty = estimate_difficulty(&q);
            q.embedding = provider.embed(&full)?;
            questions.push(q);
        }
        Ok(Self {
            questions,
            warnings: raw.warnings,
        })
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    pub fn get(&self, q_id: &str) -> Option<&Question> {
        self.questions.iter().find(|q| q.q_id == q_id)
    }

    pub fn count(&self, topic: Topic, kind: QuestionKind) -> usize {
        self.questions.iter().filter(|q| q.topic == topic && q.kind == kind).count()
    }

    /// One document per question that carries an explanation, for indexing
    /// so grading can cite it.
    pub fn explanation_documents(&self, origin: &str, fetched_at: chrono::DateTime<chrono::Utc>) -> Vec<SourceDocument> {
        self.questions
            .iter()
            .filter_map(|q| {
                let exp = q.explanation.as_ref().or(q.reference_answer.as_ref())?;
                let mut text = q.text.clone();
                if let Some(k) = q.key_text() {
                    text.push_str(&format!(" Answer: {k}."));
                }
                text.push(' ');
                text.push_str(exp);
                Some(SourceDocument::new(
                    format!("bank-{}", q.q_id),
                    DocKind::QuestionPaper,
                    text,
                    fetched_at,
                    format!("{origin}#{}", q.q_id),
                ))
            })
            .collect()
    }
}

/// Parses a bank with the default classifier.
pub fn parse_question_bank(text: &str, provider: &dyn EmbeddingProvider) -> Result<QuestionBank, MockTestError> {
    QuestionBank::parse(text, provider)
}
