//! Independent oracles for the diversification step.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use jobsphere_core::recommender::{objective, Explanation, ScoredJob};

pub fn job(id: usize, p: f64, cat: u8, loc: u8, dep: u8) -> ScoredJob {
    ScoredJob {
        job_id: format!("j{id:02}"),
        s_sem: 0.0,
        s_skill: 0.0,
        s_loc: 0.0,
        s_sal: 0.0,
        s_rec: 0.0,
        eligible: true,
        relevance: 0.0,
        p_apply: p,
        category: format!("c{cat}"),
        location_name: format!("l{loc}"),
        department: format!("d{dep}"),
        explanation: Explanation::default(),
    }
}

pub fn instance(r: &mut ChaCha8Rng) -> (Vec<ScoredJob>, usize, f64) {
    let n = r.random_range(1..=12);
    let k = r.random_range(1..=5);
    let lambda = [0.0, 0.05, 0.1, 0.3, 1.0][r.random_range(0..5)];
    let jobs = (0..n)
        .map(|i| job(i, r.random_range(0.0..1.0), r.random_range(0..4), r.random_range(0..4), r.random_range(0..3)))
        .collect();
    (jobs, k, lambda)
}

pub fn exhaustive_opt(jobs: &[ScoredJob], k: usize, lambda: f64) -> f64 {
    let n = jobs.len();
    let size = k.min(n);
    let mut best = f64::NEG_INFINITY;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let pick: Vec<&ScoredJob> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &jobs[i]).collect();
        best = best.max(objective(&pick, lambda));
    }
    best
}

/// Textbook greedy: recompute the objective of every extension, keep the best.
pub fn reference_greedy(jobs: &[ScoredJob], k: usize, lambda: f64) -> Vec<String> {
    let mut chosen: Vec<&ScoredJob> = Vec::new();
    let mut used: HashSet<usize> = HashSet::new();
    while chosen.len() < k && used.len() < jobs.len() {
        let base = objective(&chosen, lambda);
        let mut best: Option<(f64, usize)> = None;
        for (i, j) in jobs.iter().enumerate() {
            if used.contains(&i) {
                continue;
            }
            let mut ext = chosen.clone();
            ext.push(j);
            let gain = objective(&ext, lambda) - base;
            let better = match best {
                None => true,
                Some((g, b)) => {
                    let cur = &jobs[b];
                    gain > g || (gain == g && (j.p_apply > cur.p_apply || (j.p_apply == cur.p_apply && j.job_id < cur.job_id)))
                }
            };
            if better {
                best = Some((gain, i));
            }
        }
        let (_, i) = best.unwrap();
        used.insert(i);
        chosen.push(&jobs[i]);
    }
    chosen.iter().map(|j| j.job_id.clone()).collect()
}
