use std::collections::HashSet;
use std::sync::Arc;

use jobsphere_core::embedding::HashingEmbedder;
use jobsphere_core::index::HnswConfig;
use jobsphere_core::recommender::*;
use jobsphere_core::synth;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diversify_oracle::{exhaustive_opt, instance, reference_greedy};
use crate::Outcome;

fn recommender_for(jobs: &[JobPosting]) -> Recommender {
    let mut r = Recommender::new(JobCatalog::new(HnswConfig::default()), RankWeights::default(), Arc::new(HashingEmbedder));
    for j in jobs {
        r.add_job(j.clone()).unwrap();
    }
    r
}

fn eligible_oracle(p: &CandidateProfile, j: &JobPosting) -> bool {
    let rank = |e: EducationLevel| EducationLevel::ALL.iter().position(|x| *x == e).unwrap();
    rank(p.education_level) >= rank(j.min_education)
        && (j.age_range.0..=j.age_range.1).contains(&p.age)
        && !(j.citizenship_required && !p.citizen)
}

/// Mean precision@10 >= 0.6 over 20 planted corpora; 0 hard-filter
/// violations over 10,000 fuzzed profile/job pairs.
pub fn precision_and_eligibility() -> Outcome {
    let now = synth::reference_now();
    let mut total = 0.0;
    for i in 0..20 {
        let c = synth::planted_corpus(i, 2026, now);
        let top = recommender_for(&c.jobs).recommend(&c.profile, now, 10).unwrap();
        total += top.iter().filter(|s| c.relevant.contains(&s.job_id)).count() as f64 / 10.0;
    }
    let precision = total / 20.0;

    let mut r = synth::rng(77);
    let (mut pairs, mut violations) = (0, 0);
    for c in 0..40 {
        let jobs: Vec<JobPosting> = (0..50).map(|i| synth::random_job(&mut r, format!("c{c}-j{i}"), now)).collect();
        let rec = recommender_for(&jobs);
        for p in 0..5 {
            let profile = synth::random_profile(&mut r, format!("c{c}-u{p}"));
            let returned: HashSet<String> = rec.recommend(&profile, now, 50).unwrap().into_iter().map(|s| s.job_id).collect();
            for j in &jobs {
                pairs += 1;
                if returned.contains(&j.job_id) && !eligible_oracle(&profile, j) {
                    violations += 1;
                }
            }
        }
    }
    Outcome::check(
        precision >= 0.6 && violations == 0,
        format!("precision@10 {precision:.3} (>= 0.6); {violations} eligibility violations in {pairs} pairs (= 0)"),
    )
}

/// Greedy >= (1 - 1/e) OPT on 200 instances, identical to the reference trace.
pub fn diversify_optimality() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(841);
    let bound = 1.0 - (-1.0f64).exp();
    let (mut worst, mut below, mut trace_diffs) = (f64::INFINITY, 0, 0);
    for _ in 0..200 {
        let (jobs, k, lambda) = instance(&mut r);
        let out = diversify(&jobs, k, lambda);
        let refs: Vec<&ScoredJob> = out.iter().collect();
        let g = objective(&refs, lambda);
        let opt = exhaustive_opt(&jobs, k, lambda);
        if g < bound * opt - 1e-12 {
            below += 1;
        }
        if opt > 0.0 {
            worst = worst.min(g / opt);
        }
        let ids: Vec<String> = out.iter().map(|j| j.job_id.clone()).collect();
        if ids != reference_greedy(&jobs, k, lambda) {
            trace_diffs += 1;
        }
    }
    Outcome::check(
        below == 0 && trace_diffs == 0,
        format!("worst greedy/OPT {worst:.4} (>= {bound:.4}); {below} below bound, {trace_diffs} trace mismatches in 200"),
    )
}
