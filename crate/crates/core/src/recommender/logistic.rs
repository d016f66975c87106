use serde::{Deserialize, Serialize};

use super::scoring::sigmoid;
use super::types::Beta;
use super::RecommendError;

/// One row of the interaction log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionRow {
    pub user_id: String,
    pub job_id: String,
    pub s_sem: f64,
    pub s_skill: f64,
    pub s_loc: f64,
    pub s_sal: f64,
    pub s_rec: f64,
    pub applied: bool,
}

impl InteractionRow {
    pub fn components(&self) -> [f64; 5] {
        [self.s_sem, self.s_skill, self.s_loc, self.s_sal, self.s_rec]
    }
}

pub fn parse_interaction_log(text: &str) -> Result<Vec<InteractionRow>, RecommendError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| RecommendError::Config(format!("interaction log line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn apply_probability(components: [f64; 5], beta: &Beta) -> f64 {
    let b = beta.to_array();
    let z = b[0] + components.iter().zip(&b[1..]).map(|(s, w)| s * w).sum::<f64>();
    sigmoid(z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Ridge penalty; keeps separable logs finite.
    pub l2: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            l2: 1e-3,
            max_iter: 100,
            tol: 1e-10,
        }
    }
}

/// Maximum-likelihood logistic regression by Newton's method.
pub fn fit_logistic(rows: &[InteractionRow], opts: FitOptions) -> Result<Beta, RecommendError> {
    if rows.is_empty() {
        return Err(RecommendError::Config("interaction log is empty".into()));
    }
    let xs: Vec<[f64; 6]> = rows
        .iter()
        .map(|r| {
            let c = r.components();
            [1.0, c[0], c[1], c[2], c[3], c[4]]
        })
        .collect();
    let mut w = [0.0f64; 6];
    for _ in 0..opts.max_iter {
        let mut grad = [0.0f64; 6];
        let mut hess = [[0.0f64; 6]; 6];
        for (x, r) in xs.iter().zip(rows) {
            let z: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
            let p = sigmoid(z);
            let y = if r.applied { 1.0 } else { 0.0 };
            let s = p * (1.0 - p);
            for i in 0..6 {
                grad[i] += (y - p) * x[i];
                for j in 0..6 {
                    hess[i][j] += s * x[i] * x[j];
                }
            }
        }
        for i in 0..6 {
            grad[i] -= opts.l2 * w[i];
            hess[i][i] += opts.l2;
        }
        let step = solve(hess, grad).ok_or_else(|| RecommendError::Config("singular system while fitting".into()))?;
        for i in 0..6 {
            w[i] += step[i];
        }
        if step.iter().all(|d| d.abs() < opts.tol) {
            break;
        }
    }
    Ok(Beta::from_array(w))
}

/// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let f = a[row][col] / a[col][col];
            for k in col..N {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let tail: f64 = (row + 1..N).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn row(c: [f64; 5], applied: bool) -> InteractionRow {
        InteractionRow {
            user_id: "u".into(),
            job_id: "j".into(),
            s_sem: c[0],
            s_skill: c[1],
            s_loc: c[2],
            s_sal: c[3],
            s_rec: c[4],
            applied,
        }
    }

    /// applied iff s_skill > 0.5, labels flipped with probability 0.1.
    fn planted_log(n: usize, seed: u64) -> Vec<InteractionRow> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let c: [f64; 5] = std::array::from_fn(|_| rng.random::<f64>());
                let mut y = c[1] > 0.5;
                if rng.random::<f64>() < 0.1 {
                    y = !y;
                }
                row(c, y)
            })
            .collect()
    }

    #[test]
    fn zero_beta_gives_half() {
        assert_eq!(apply_probability([0.3, 0.9, 0.1, 1.0, 0.0], &Beta::default()), 0.5);
    }

    #[test]
    fn monotone_in_skill() {
        let b = Beta {
            skill: 2.0,
            ..Beta::default()
        };
        let lo = apply_probability([0.5, 0.2, 0.5, 0.5, 0.5], &b);
        let hi = apply_probability([0.5, 0.3, 0.5, 0.5, 0.5], &b);
        assert!(hi > lo);
    }

    #[test]
    fn recovers_planted_rule() {
        let train = planted_log(1000, 11);
        let test = planted_log(1000, 12);
        let beta = fit_logistic(&train, FitOptions::default()).unwrap();
        assert!(beta.skill > 0.0);
        let correct = test
            .iter()
            .filter(|r| (apply_probability(r.components(), &beta) > 0.5) == r.applied)
            .count();
        let acc = correct as f64 / test.len() as f64;
        assert!(acc >= 0.85, "held-out accuracy {acc}");
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn solve_small_system() {
        let x = solve([[2.0, 1.0], [1.0, 3.0]], [3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0]).is_none());
    }

    #[test]
    fn bundled_log_fit_matches_reference_and_config() {
        // scipy BFGS on the same penalized likelihood
        let reference = [
            -4.568366077408487,
            0.9215917237653226,
            4.819238432272673,
            1.4045723230830935,
            0.4212701638043753,
            1.4100530264332747,
        ];
        let rows = parse_interaction_log(include_str!("../../data/interactions.jsonl")).unwrap();
        assert_eq!(rows.len(), 1000);
        let fitted = fit_logistic(&rows, FitOptions::default()).unwrap().to_array();
        let bundled = crate::recommender::RankWeights::default().beta.to_array();
        for i in 0..6 {
            assert!((fitted[i] - reference[i]).abs() < 1e-6, "coef {i}: {} vs {}", fitted[i], reference[i]);
            assert!((fitted[i] - bundled[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_log_is_an_error() {
        assert!(fit_logistic(&[], FitOptions::default()).is_err());
    }

    #[test]
    fn log_round_trip() {
        let r = row([0.1, 0.2, 0.3, 0.4, 0.5], true);
        let text = format!("{}\n\n{}\n", serde_json::to_string(&r).unwrap(), serde_json::to_string(&r).unwrap());
        assert_eq!(parse_interaction_log(&text).unwrap(), vec![r.clone(), r]);
        assert!(parse_interaction_log("{").is_err());
    }
}
