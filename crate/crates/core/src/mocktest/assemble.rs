use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{MockTestError, Question, QuestionKind, Topic, DUPLICATE_COSINE};
use crate::embedding::cosine;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "QuotaRepr")]
pub struct TopicQuota {
    pub mcq: usize,
    pub descriptive: usize,
}

impl TopicQuota {
    pub fn get(&self, kind: QuestionKind) -> usize {
        match kind {
            QuestionKind::Mcq => self.mcq,
            QuestionKind::Descriptive => self.descriptive,
        }
    }

    pub fn total(&self) -> usize {
        self.mcq + self.descriptive
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuotaRepr {
    Count(usize),
    Split {
        #[serde(default)]
        mcq: usize,
        #[serde(default)]
        descriptive: usize,
    },
}

impl From<QuotaRepr> for TopicQuota {
    fn from(r: QuotaRepr) -> Self {
        match r {
            QuotaRepr::Count(mcq) => TopicQuota { mcq, descriptive: 0 },
            QuotaRepr::Split { mcq, descriptive } => TopicQuota { mcq, descriptive },
        }
    }
}

/// Requested questions per topic. In JSON a bare number means that many
/// MCQs: `{"math": 10, "english": {"descriptive": 2}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Blueprint(pub BTreeMap<Topic, TopicQuota>);

impl Blueprint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, topic: Topic, kind: QuestionKind, count: usize) -> Self {
        let q = self.0.entry(topic).or_default();
        match kind {
            QuestionKind::Mcq => q.mcq += count,
            QuestionKind::Descriptive => q.descriptive += count,
        }
        self
    }

    pub fn total(&self) -> usize {
        self.0.values().map(TopicQuota::total).sum()
    }

    pub fn count(&self, kind: QuestionKind) -> usize {
        self.0.values().map(|q| q.get(kind)).sum()
    }

    pub fn total_seconds(&self) -> u32 {
        (self.count(QuestionKind::Mcq) as u32) * QuestionKind::Mcq.seconds()
            + (self.count(QuestionKind::Descriptive) as u32) * QuestionKind::Descriptive.seconds()
    }

    pub fn validate(&self) -> Result<(), MockTestError> {
        if self.total() == 0 {
            return Err(MockTestError::InvalidBlueprint("no questions requested".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MockTest {
    pub test_id: String,
    pub seed: u64,
    pub blueprint: Blueprint,
    pub questions: Vec<Question>,
    pub per_question_seconds: Vec<u32>,
    pub total_seconds: u32,
}

/// A question as shown to a candidate: no key, explanation or stats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublicQuestion {
    pub q_id: String,
    pub text: String,
    pub kind: QuestionKind,
    pub options: Vec<String>,
    pub topic: Topic,
    pub difficulty: u8,
    pub seconds: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublicTest {
    pub test_id: String,
    pub seed: u64,
    pub blueprint: Blueprint,
    pub questions: Vec<PublicQuestion>,
    pub total_seconds: u32,
}

impl MockTest {
    pub fn question(&self, q_id: &str) -> Option<&Question> {
        self.questions.iter().find(|q| q.q_id == q_id)
    }

    pub fn count(&self, kind: QuestionKind) -> usize {
        self.questions.iter().filter(|q| q.kind == kind).count()
    }

    pub fn public_view(&self) -> PublicTest {
        PublicTest {
            test_id: self.test_id.clone(),
            seed: self.seed,
            blueprint: self.blueprint.clone(),
            questions: self
                .questions
                .iter()
                .zip(&self.per_question_seconds)
                .map(|(q, &seconds)| PublicQuestion {
                    q_id: q.q_id.clone(),
                    text: q.text.clone(),
                    kind: q.kind,
                    options: q.options.clone(),
                    topic: q.topic,
                    difficulty: q.difficulty,
                    seconds,
                })
                .collect(),
            total_seconds: self.total_seconds,
        }
    }
}

fn similarity(a: &Question, b: &Question) -> f64 {
    cosine(&a.embedding, &b.embedding).unwrap_or(0.0)
}

/// `q12` sorts after `q2`.
fn id_order(q_id: &str) -> (u64, &str) {
    let digits: String = q_id.chars().skip_while(|c| !c.is_ascii_digit()).take_while(char::is_ascii_digit).collect();
    (digits.parse().unwrap_or(u64::MAX), q_id)
}

/// Seeded selection per (topic, kind) group, skipping any candidate with
/// cosine >= 0.85 to a question already picked anywhere in the test.
/// Output is sorted by difficulty, then q_id.
pub fn assemble_test(bank: &[Question], blueprint: &Blueprint, seed: u64) -> Result<MockTest, MockTestError> {
    blueprint.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<&Question> = Vec::with_capacity(blueprint.total());
    for (&topic, quota) in &blueprint.0 {
        for kind in [QuestionKind::Mcq, QuestionKind::Descriptive] {
            let want = quota.get(kind);
            if want == 0 {
                continue;
            }
            let mut pool: Vec<&Question> = bank.iter().filter(|q| q.topic == topic && q.kind == kind).collect();
            pool.sort_by(|a, b| id_order(&a.q_id).cmp(&id_order(&b.q_id)));
            pool.shuffle(&mut rng);
            let mut got = 0;
            for q in pool {
                if got == want {
                    break;
                }
                if picked.iter().any(|p| p.q_id == q.q_id || similarity(p, q) >= DUPLICATE_COSINE) {
                    continue;
                }
                picked.push(q);
                got += 1;
            }
            if got < want {
                return Err(MockTestError::InsufficientQuestions {
                    topic,
                    kind,
                    available: got,
                    requested: want,
                });
            }
        }
    }
    picked.sort_by(|a, b| (a.difficulty, id_order(&a.q_id)).cmp(&(b.difficulty, id_order(&b.q_id))));
    let questions: Vec<Question> = picked.into_iter().cloned().collect();
    let per_question_seconds: Vec<u32> = questions.iter().map(|q| q.kind.seconds()).collect();
    let total_seconds = per_question_seconds.iter().sum();

    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(serde_json::to_vec(blueprint).unwrap_or_default());
    for q in &questions {
        h.update(q.q_id.as_bytes());
        h.update([0]);
    }
    let test_id = format!("t-{}", &hex::encode(h.finalize())[..16]);
    Ok(MockTest {
        test_id,
        seed,
        blueprint: blueprint.clone(),
        questions,
        per_question_seconds,
        total_seconds,
    })
}
