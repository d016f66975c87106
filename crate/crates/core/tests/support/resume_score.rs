//! Field-level scoring of parsed resumes against gold JSON.
//!
//! Every non-null scalar becomes a `(field, normalized value)` item:
//! contact name/email/phone/address, education degree/institution/year/gpa,
//! experience company/title/start/end, and one item per skill. Bullets are
//! not scored. Items are compared as multisets.

use std::collections::HashMap;

use serde_json::Value;

fn norm(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => {
            let s = s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
            let s = s.trim_end_matches(['.', ',']).to_string();
            (!s.is_empty()).then_some(s)
        }
        Value::Number(n) => Some(n.as_f64().map(|f| format!("{f}")).unwrap_or_else(|| n.to_string())),
        other => Some(other.to_string()),
    }
}

pub fn items(r: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut push = |field: &str, v: &Value| {
        if let Some(s) = norm(v) {
            out.push((field.to_string(), s));
        }
    };
    for f in ["name", "email", "phone", "address"] {
        push(&format!("contact.{f}"), &r["contact"][f]);
    }
    for e in r["education"].as_array().into_iter().flatten() {
        for f in ["degree", "institution", "year", "gpa"] {
            push(&format!("edu.{f}"), &e[f]);
        }
    }
    for e in r["experience"].as_array().into_iter().flatten() {
        for f in ["company", "title", "start", "end"] {
            push(&format!("exp.{f}"), &e[f]);
        }
    }
    for s in r["skills"].as_array().into_iter().flatten() {
        push("skill", s);
    }
    out
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl Counts {
    pub fn add(&mut self, o: Counts) {
        self.tp += o.tp;
        self.fp += o.fp;
        self.fn_ += o.fn_;
    }

    pub fn f1(&self) -> f64 {
        let d = 2 * self.tp + self.fp + self.fn_;
        if d == 0 {
            1.0
        } else {
            2.0 * self.tp as f64 / d as f64
        }
    }
}

pub fn compare(pred: &Value, gold: &Value) -> Counts {
    let mut bag: HashMap<(String, String), usize> = HashMap::new();
    for i in items(gold) {
        *bag.entry(i).or_default() += 1;
    }
    let mut c = Counts::default();
    for i in items(pred) {
        match bag.get_mut(&i) {
            Some(n) if *n > 0 => {
                *n -= 1;
                c.tp += 1;
            }
            _ => c.fp += 1,
        }
    }
    c.fn_ = bag.values().sum();
    c
}

/// (correct, total) over name, email and phone, null counting as a value.
pub fn contact_hits(pred: &Value, gold: &Value) -> (usize, usize) {
    let correct = ["name", "email", "phone"]
        .iter()
        .filter(|f| norm(&pred["contact"][**f]) == norm(&gold["contact"][**f]))
        .count();
    (correct, 3)
}
