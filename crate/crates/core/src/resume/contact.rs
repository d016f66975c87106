use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::sections::header_of;

pub(crate) static EMAIL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"[A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,}").unwrap());
static EMAIL_VALID: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,}$").unwrap());
/// Indian mobile: optional +91 / 91 / 0 prefix, ten digits starting 6-9,
/// spaces or dashes allowed between digits.
pub(crate) static PHONE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?:^|[^\d+])((?:\+\s?91|\b91|\b0)?\)?[\s-]?\(?[6-9]\d(?:[\s\-)]?\d){8})(?:\D|$)").unwrap()
});
static PHONE_VALID: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\+91[6-9]\d{9}$").unwrap());
static PIN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\b\d{6}\b|\b\d{3}\s\d{3}\b").unwrap());
static LABEL: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)^\s*(name|full name|email|e-mail|mail|phone|mobile|mob|contact|contact no|tel|address|location)\s*[:.\-]\s*")
        .unwrap()
});
static NOT_A_NAME: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)^(resume|curriculum vitae|cv|bio ?data|https?://|www\.|linkedin|github)").unwrap()
});

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Contact {
    pub name: Option<String>,
    pub email: Option<String>,
    pub phone: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub address: Option<String>,
}

pub fn is_valid_email(s: &str) -> bool {
    EMAIL_VALID.is_match(s)
}

pub fn is_valid_phone(s: &str) -> bool {
    PHONE_VALID.is_match(s)
}

pub fn find_email(text: &str) -> Option<String> {
    EMAIL
        .find_iter(text)
        .map(|m| m.as_str().trim_end_matches('.').to_string())
        .find(|e| is_valid_email(e))
}

/// First Indian mobile number in `text`, as +91 followed by ten digits.
pub fn find_phone(text: &str) -> Option<String> {
    PHONE.captures_iter(text).find_map(|c| normalize_phone(&c[1]))
}

pub fn normalize_phone(raw: &str) -> Option<String> {
    let digits: String = raw.chars().filter(char::is_ascii_digit).collect();
    let ten = match digits.len() {
        10 => digits.as_str(),
        11 if digits.starts_with('0') => &digits[1..],
        12 if digits.starts_with("91") => &digits[2..],
        _ => return None,
    };
    let p = format!("+91{ten}");
    is_valid_phone(&p).then_some(p)
}

fn strip_label(line: &str) -> (&str, Option<String>) {
    match LABEL.captures(line) {
        Some(c) => (&line[c.get(0).unwrap().end()..], Some(c[1].to_lowercase())),
        None => (line, None),
    }
}

fn looks_like_name(s: &str) -> bool {
    let words = s.split_whitespace().count();
    (1..=6).contains(&words)
        && s.chars().any(char::is_alphabetic)
        && !s.chars().any(|c| c.is_ascii_digit() || c == '@')
        && !NOT_A_NAME.is_match(s)
        && header_of(s).is_none()
}

/// Name, email, phone and address from a contact block. Missing fields come
/// back as `None` with a warning each (address is optional and silent).
pub fn extract_contact(section_text: &str) -> (Contact, Vec<String>) {
    let mut c = Contact {
        email: find_email(section_text),
        phone: find_phone(section_text),
        ..Contact::default()
    };
    for line in section_text.lines() {
        let (body, label) = strip_label(line.trim());
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        if label.as_deref() == Some("address") || label.as_deref() == Some("location") {
            c.address.get_or_insert_with(|| body.to_string());
            continue;
        }
        if c.name.is_none() && matches!(label.as_deref(), None | Some("name") | Some("full name")) {
            let first = body
                .split(['|', '•', '·', '\t'])
                .map(str::trim)
                .find(|seg| !seg.is_empty() && !EMAIL.is_match(seg) && !PHONE.is_match(seg));
            if let Some(seg) = first.filter(|s| looks_like_name(s)) {
                c.name = Some(seg.to_string());
                continue;
            }
        }
        if c.address.is_none() && label.is_none() && PIN.is_match(body) && !PHONE.is_match(body) {
            c.address = Some(body.to_string());
        }
    }
    let mut warnings = Vec::new();
    if c.name.is_none() {
        warnings.push("contact: name not found".to_string());
    }
    if c.email.is_none() {
        warnings.push("contact: email not found".to_string());
    }
    if c.phone.is_none() {
        warnings.push("contact: phone not found".to_string());
    }
    (c, warnings)
}
