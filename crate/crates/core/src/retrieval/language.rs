use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RetrievalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LanguageTag {
    En,
    Hi,
    Pa,
}

impl LanguageTag {
    pub const ALL: [LanguageTag; 3] = [LanguageTag::En, LanguageTag::Hi, LanguageTag::Pa];

    pub fn as_str(self) -> &'static str {
        match self {
            LanguageTag::En => "en",
            LanguageTag::Hi => "hi",
            LanguageTag::Pa => "pa",
        }
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LanguageTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "en" => Ok(LanguageTag::En),
            "hi" => Ok(LanguageTag::Hi),
            "pa" => Ok(LanguageTag::Pa),
            other => Err(format!("unknown language tag '{other}' (expected en, hi or pa)")),
        }
    }
}

const SCRIPT_SHARE: f64 = 0.30;

fn is_devanagari(c: char) -> bool {
    ('\u{0900}'..='\u{097F}').contains(&c)
}

fn is_gurmukhi(c: char) -> bool {
    ('\u{0A00}'..='\u{0A7F}').contains(&c)
}

/// Classifies by letter share per script block. A script needs at least 30%
/// of all letters; when both Indic scripts qualify the larger count wins and
/// an exact tie goes to Hindi. Anything else is English.
pub fn detect_language(text: &str) -> Result<LanguageTag, RetrievalError> {
    if text.trim().is_empty() {
        return Err(RetrievalError::EmptyText);
    }
    let (mut letters, mut deva, mut guru) = (0usize, 0usize, 0usize);
    for c in text.chars().filter(|c| c.is_alphabetic()) {
        letters += 1;
        if is_devanagari(c) {
            deva += 1;
        } else if is_gurmukhi(c) {
            guru += 1;
        }
    }
    if letters == 0 {
        return Ok(LanguageTag::En);
    }
    let qualifies = |n: usize| n > 0 && n as f64 / letters as f64 >= SCRIPT_SHARE;
    Ok(match (qualifies(deva), qualifies(guru)) {
        (true, true) if guru > deva => LanguageTag::Pa,
        (true, _) => LanguageTag::Hi,
        (false, true) => LanguageTag::Pa,
        (false, false) => LanguageTag::En,
    })
}
