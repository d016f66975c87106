//! One line per acceptance criterion. Run with
//! `cargo test -p jobsphere-acceptance --test acceptance`; pass substrings
//! of criterion ids to run a subset.

#[path = "../../../core/tests/support/diversify_oracle.rs"]
mod diversify_oracle;
#[path = "../../../core/tests/support/grounding.rs"]
mod grounding;
#[path = "../../../core/tests/support/resume_score.rs"]
mod resume_score;
#[path = "../../../server/tests/support/mod.rs"]
mod server_support;

mod index;
mod ingestion;
mod latency;
mod mocktest;
mod recommend;
mod resume;
mod retrieval;
mod service;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

pub struct Outcome {
    pub verdict: Verdict,
    pub detail: String,
}

impl Outcome {
    pub fn check(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: detail.into(),
        }
    }
}

pub fn core_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

pub fn median_ms(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    ("index-recall", index::recall),
    ("retrieval-latency", latency::chunk_search),
    ("search-payload-latency", latency::job_search_payload),
    ("candidate-latency", latency::candidate_retrieval),
    ("recommender-precision", recommend::precision_and_eligibility),
    ("diversify-optimality", recommend::diversify_optimality),
    ("resume-f1", resume::f1_and_contacts),
    ("mocktest-properties", mocktest::properties),
    ("groundedness", retrieval::groundedness),
    ("cache", retrieval::cache),
    ("service", service::service),
    ("ingestion", ingestion::ingestion),
];

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<&Criterion> = CRITERIA
        .iter()
        .filter(|(id, _)| filters.is_empty() || filters.iter().any(|f| id.contains(f.as_str())))
        .collect();
    println!("running {} acceptance criteria", selected.len());
    let mut failed = 0;
    for (id, run) in selected {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Outcome::check(false, format!("panicked: {msg}"))
        });
        let tag = match out.verdict {
            Verdict::Pass => "PASS",
            Verdict::Warn => "WARN",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
        };
        println!("{tag} {id:<24} {} [{:.1} s]", out.detail, t.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria met");
}
