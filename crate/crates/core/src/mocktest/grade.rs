use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::{MockTest, MockTestError, Question, QuestionKind, Topic};
use crate::retrieval::{Citation, RetrievalEngine};

pub const NO_EXPLANATION_TEXT: &str = "no explanation found";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestSubmission {
    pub test_id: String,
    /// q_id to option letter (mcq) or free text (descriptive).
    pub answers: BTreeMap<String, String>,
    pub started_at: DateTime<Utc>,
    pub submitted_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionExplanation {
    pub text: String,
    pub citations: Vec<Citation>,
    pub found: bool,
}

impl QuestionExplanation {
    pub fn not_found() -> Self {
        Self {
            text: NO_EXPLANATION_TEXT.into(),
            citations: Vec::new(),
            found: false,
        }
    }
}

/// Source of per-question explanations shown after grading.
pub trait Explainer: Send + Sync {
    fn explain(&self, question: &Question) -> QuestionExplanation;
}

/// Falls back to the bank's own explanation line, uncited.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoExplainer;

impl Explainer for NoExplainer {
    fn explain(&self, question: &Question) -> QuestionExplanation {
        match &question.explanation {
            Some(e) => QuestionExplanation {
                text: e.clone(),
                citations: Vec::new(),
                found: true,
            },
            None => QuestionExplanation::not_found(),
        }
    }
}

/// Grounded answer over the indexed corpus for the question stem. Retrieval
/// failures degrade to "no explanation found" rather than failing grading.
impl Explainer for RetrievalEngine {
    fn explain(&self, question: &Question) -> QuestionExplanation {
        match self.answer_query(&question.text, None) {
            Ok(a) if a.answered && !a.citations.is_empty() => QuestionExplanation {
                text: a.text,
                citations: a.citations,
                found: true,
            },
            _ => QuestionExplanation::not_found(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionResult {
    pub q_id: String,
    pub kind: QuestionKind,
    pub topic: Topic,
    pub response: Option<String>,
    pub answer_key: Option<char>,
    /// None for descriptive answers, which need a human grader.
    pub correct: Option<bool>,
    pub manual_review: bool,
    pub explanation: QuestionExplanation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradeReport {
    pub test_id: String,
    pub score: u32,
    pub max_score: u32,
    pub manual_review: u32,
    pub elapsed_seconds: i64,
    pub within_time: bool,
    pub per_question: Vec<QuestionResult>,
}

/// "b", "(B)", "B." and " B " all read as B.
fn response_letter(s: &str) -> Option<char> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(['.', ')']).trim();
    let mut cs = t.chars();
    let c = cs.next()?.to_ascii_uppercase();
    (cs.next().is_none() && ('A'..='D').contains(&c)).then_some(c)
}

/// +1 per exact key match, no negative marking. Results follow the test's
/// question order whatever order the answers arrive in.
pub fn grade(test: &MockTest, submission: &TestSubmission, explainer: &dyn Explainer) -> Result<GradeReport, MockTestError> {
    if submission.test_id != test.test_id {
        return Err(MockTestError::UnknownTest(submission.test_id.clone()));
    }
    if let Some(q_id) = submission.answers.keys().find(|id| test.question(id).is_none()) {
        return Err(MockTestError::ForeignQuestion {
            q_id: q_id.clone(),
            test_id: test.test_id.clone(),
        });
    }
    let elapsed = (submission.submitted_at - submission.started_at).num_seconds();
    if elapsed < 0 {
        return Err(MockTestError::InvalidSubmission("submitted_at precedes started_at".into()));
    }
    let mut score = 0;
    let mut manual = 0;
    let mut per_question = Vec::with_capacity(test.questions.len());
    for q in &test.questions {
        let response = submission.answers.get(&q.q_id).filter(|r| !r.trim().is_empty()).cloned();
        let correct = match q.kind {
            QuestionKind::Mcq => {
                let ok = response.as_deref().and_then(response_letter).is_some_and(|c| Some(c) == q.answer_key);
                score += ok as u32;
                Some(ok)
            }
            QuestionKind::Descriptive => {
                manual += response.is_some() as u32;
                None
            }
        };
        per_question.push(QuestionResult {
            q_id: q.q_id.clone(),
            kind: q.kind,
            topic: q.topic,
            response,
            answer_key: q.answer_key,
            correct,
            manual_review: q.kind == QuestionKind::Descriptive,
            explanation: explainer.explain(q),
        });
    }
    Ok(GradeReport {
        test_id: test.test_id.clone(),
        score,
        max_score: test.count(QuestionKind::Mcq) as u32,
        manual_review: manual,
        elapsed_seconds: elapsed,
        within_time: elapsed <= test.total_seconds as i64,
        per_question,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_normalization() {
        for s in ["b", "(B)", "B.", " B ", "B)"] {
            assert_eq!(response_letter(s), Some('B'), "{s}");
        }
        for s in ["", "E", "BC", "option B"] {
            assert_eq!(response_letter(s), None, "{s}");
        }
    }
}
