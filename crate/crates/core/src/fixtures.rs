//! Small bundled corpora so every front end runs without setup.

use crate::embedding::EmbeddingProvider;
use crate::ingestion::SourceDocument;
use crate::mocktest::{MockTestError, QuestionBank};

pub const KNOWLEDGE_CORPUS: &str = include_str!("../data/fixtures/kb/corpus.jsonl");
pub const QUESTION_BANK: &str = include_str!("../data/question_bank.txt");

/// The 20-document knowledge fixture.
pub fn knowledge_documents() -> Vec<SourceDocument> {
    KNOWLEDGE_CORPUS
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("bundled corpus parses"))
        .collect()
}

pub fn question_bank(provider: &dyn EmbeddingProvider) -> Result<QuestionBank, MockTestError> {
    QuestionBank::parse(QUESTION_BANK, provider)
}
