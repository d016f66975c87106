use std::fs;

use jobsphere_core::resume::ResumeParser;
use serde_json::Value;

use crate::resume_score::{compare, contact_hits, Counts};
use crate::{core_data, Outcome};

/// Micro-F1 >= 0.85 and contact accuracy >= 0.95 on the 50-resume gold corpus.
pub fn f1_and_contacts() -> Outcome {
    let dir = core_data().join("resumes");
    let parser = ResumeParser::default().with_current_year(2026);
    let mut total = Counts::default();
    let (mut hit, mut all, mut docs) = (0, 0, 0);
    for i in 1..=50 {
        let text = fs::read_to_string(dir.join(format!("r{i:02}.txt"))).unwrap();
        let gold: Value = serde_json::from_str(&fs::read_to_string(dir.join(format!("r{i:02}.json"))).unwrap()).unwrap();
        let parsed = serde_json::to_value(parser.parse(&text).unwrap()).unwrap();
        total.add(compare(&parsed, &gold));
        let (h, a) = contact_hits(&parsed, &gold);
        hit += h;
        all += a;
        docs += 1;
    }
    let f1 = total.f1();
    let acc = hit as f64 / all as f64;
    Outcome::check(
        docs == 50 && f1 >= 0.85 && acc >= 0.95,
        format!("micro-F1 {f1:.4} (>= 0.85), contact accuracy {acc:.4} (>= 0.95) over {docs} resumes"),
    )
}
