use std::time::Instant;

use jobsphere_core::embedding::{cosine, HashingEmbedder};
use jobsphere_core::fixtures;
use jobsphere_core::mocktest::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Outcome;

// Distinct questions per (topic, kind) in the fixture bank.
const MCQ_CAP: [(Topic, usize); 5] = [
    (Topic::Gk, 14),
    (Topic::Math, 14),
    (Topic::Reasoning, 12),
    (Topic::English, 12),
    (Topic::CurrentAffairs, 10),
];
const DESCRIPTIVE_CAP: [(Topic, usize); 4] =
    [(Topic::Gk, 2), (Topic::Math, 1), (Topic::English, 2), (Topic::CurrentAffairs, 1)];

/// 500 seeded assemblies: cosine < 0.85 pairwise, non-decreasing difficulty,
/// exact blueprint counts, total_seconds = 90 mcq + 300 descriptive,
/// same seed same test; < 30 s.
pub fn properties() -> Outcome {
    let t = Instant::now();
    let bank = fixtures::question_bank(&HashingEmbedder).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(843);
    let mut bad = Vec::new();
    let mut made = 0;
    while made < 500 {
        let mut bp = Blueprint::new();
        let caps = MCQ_CAP.iter().map(|c| (c, QuestionKind::Mcq)).chain(DESCRIPTIVE_CAP.iter().map(|c| (c, QuestionKind::Descriptive)));
        for ((topic, cap), kind) in caps {
            let n = r.random_range(0..=*cap);
            if n > 0 {
                bp = bp.with(*topic, kind, n);
            }
        }
        if bp.total() == 0 {
            continue;
        }
        made += 1;
        let seed: u64 = r.random();
        let test = match assemble_test(&bank.questions, &bp, seed) {
            Ok(t) => t,
            Err(e) => {
                bad.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let qs = &test.questions;
        let near_dup = (0..qs.len()).any(|i| (i + 1..qs.len()).any(|j| cosine(&qs[i].embedding, &qs[j].embedding).unwrap() >= 0.85));
        let sorted = qs.windows(2).all(|w| w[0].difficulty <= w[1].difficulty);
        let counts = bp.0.iter().all(|(topic, quota)| {
            [QuestionKind::Mcq, QuestionKind::Descriptive]
                .iter()
                .all(|k| qs.iter().filter(|q| q.topic == *topic && q.kind == *k).count() == quota.get(*k))
        }) && qs.len() == bp.total();
        let mcq = test.count(QuestionKind::Mcq) as u32;
        let desc = test.count(QuestionKind::Descriptive) as u32;
        let timing = test.total_seconds == 90 * mcq + 300 * desc && test.per_question_seconds.iter().sum::<u32>() == test.total_seconds;
        let repeatable = assemble_test(&bank.questions, &bp, seed).ok().as_ref() == Some(&test);
        if near_dup || !sorted || !counts || !timing || !repeatable {
            bad.push(format!("seed {seed}: dup {near_dup} sorted {sorted} counts {counts} timing {timing} repeatable {repeatable}"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let first = bad.first().map(|b| format!("; first: {b}")).unwrap_or_default();
    Outcome::check(
        bad.is_empty() && secs < 30.0,
        format!("{} of {made} assemblies violate an invariant (= 0); {secs:.1} s (< 30 s){first}", bad.len()),
    )
}
