use std::collections::HashSet;

use super::types::ScoredJob;

/// Σ p_apply + λ·(distinct categories + distinct location names + distinct departments).
pub fn objective(selected: &[&ScoredJob], lambda: f64) -> f64 {
    let p: f64 = selected.iter().map(|j| j.p_apply).sum();
    let cats: HashSet<&str> = selected.iter().map(|j| j.category.as_str()).collect();
    let locs: HashSet<&str> = selected.iter().map(|j| j.location_name.as_str()).collect();
    let deps: HashSet<&str> = selected.iter().map(|j| j.department.as_str()).collect();
    p + lambda * (cats.len() + locs.len() + deps.len()) as f64
}

/// Greedy maximization of [`objective`] over `k` picks. Ties go to the
/// higher p_apply, then the smaller job_id. Output is in selection order.
pub fn diversify(scored: &[ScoredJob], k: usize, lambda: f64) -> Vec<ScoredJob> {
    let mut remaining: Vec<usize> = (0..scored.len()).collect();
    let mut cats: HashSet<&str> = HashSet::new();
    let mut locs: HashSet<&str> = HashSet::new();
    let mut deps: HashSet<&str> = HashSet::new();
    let mut out = Vec::with_capacity(k.min(scored.len()));
    while out.len() < k && !remaining.is_empty() {
        let gain = |j: &ScoredJob| {
            let fresh = usize::from(!cats.contains(j.category.as_str()))
                + usize::from(!locs.contains(j.location_name.as_str()))
                + usize::from(!deps.contains(j.department.as_str()));
            j.p_apply + lambda * fresh as f64
        };
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, (gain(&scored[i]), &scored[i])))
            .max_by(|(_, (ga, a)), (_, (gb, b))| {
                ga.total_cmp(gb)
                    .then(a.p_apply.total_cmp(&b.p_apply))
                    .then(b.job_id.cmp(&a.job_id))
            })
            .expect("remaining is non-empty");
        let j = &scored[remaining.swap_remove(pos)];
        cats.insert(j.category.as_str());
        locs.insert(j.location_name.as_str());
        deps.insert(j.department.as_str());
        out.push(j.clone());
    }
    out
}
