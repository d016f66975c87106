//! Plain-text resume parsing: sections, contact details, education,
//! experience and canonical skills.

mod contact;
mod entities;
mod lexicon;
mod sections;

use std::collections::BTreeSet;

use chrono::{Datelike, Utc};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use contact::{extract_contact, find_email, find_phone, is_valid_email, is_valid_phone, normalize_phone, Contact};
pub use entities::{
    degree_level, extract_education, extract_experience, find_degree, parse_date, Education, Experience, ResumeDate,
};
pub use lexicon::{skill_phrases, SkillCategory, SkillEntry, SkillLexicon, SkillMatch};
pub use sections::{classify_block, header_of, section_scores, segment_sections, segment_sections_with, Section};

use crate::recommender::EducationLevel;

#[derive(Debug, Error)]
pub enum ResumeError {
    #[error("text is empty")]
    EmptyText,
    #[error("skill lexicon missing: {0}")]
    LexiconMissing(String),
    #[error("skill lexicon malformed: {0}")]
    Lexicon(String),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ParsedResume {
    pub contact: Contact,
    pub education: Vec<Education>,
    pub experience: Vec<Experience>,
    pub skills: BTreeSet<String>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl ParsedResume {
    /// Highest recognized degree.
    pub fn education_level(&self) -> EducationLevel {
        self.education
            .iter()
            .map(|e| degree_level(&e.degree))
            .max()
            .unwrap_or_default()
    }
}

/// Parser bound to a lexicon and a reference year for date validation.
#[derive(Debug, Clone)]
pub struct ResumeParser<'a> {
    lexicon: &'a SkillLexicon,
    current_year: i32,
}

impl Default for ResumeParser<'static> {
    fn default() -> Self {
        Self::new(SkillLexicon::bundled())
    }
}

impl<'a> ResumeParser<'a> {
    pub fn new(lexicon: &'a SkillLexicon) -> Self {
        Self {
            lexicon,
            current_year: Utc::now().year(),
        }
    }

    pub fn with_current_year(mut self, year: i32) -> Self {
        self.current_year = year;
        self
    }

    pub fn lexicon(&self) -> &SkillLexicon {
        self.lexicon
    }

    pub fn segment(&self, text: &str) -> Result<IndexMap<Section, String>, ResumeError> {
        segment_sections_with(text, self.lexicon)
    }

    pub fn parse(&self, text: &str) -> Result<ParsedResume, ResumeError> {
        let sections = self.segment(text)?;
        let mut warnings = Vec::new();
        let get = |s: Section| sections.get(&s).map(String::as_str).unwrap_or("");

        let contact_text = get(Section::Contact);
        let (mut contact, contact_warnings) = extract_contact(contact_text);
        // Email or phone sometimes sit at the bottom of the page.
        if contact.email.is_none() {
            contact.email = find_email(text);
        }
        if contact.phone.is_none() {
            contact.phone = find_phone(text);
        }
        warnings.extend(contact_warnings.into_iter().filter(|w| {
            !(w.contains("email") && contact.email.is_some() || w.contains("phone") && contact.phone.is_some())
        }));

        let (education, w) = extract_education(get(Section::Education), self.current_year);
        warnings.extend(w);
        let (experience, w) = extract_experience(get(Section::Experience), self.current_year);
        warnings.extend(w);

        let m = self.lexicon.normalize_skills(&skill_phrases(get(Section::Skills)));
        warnings.extend(m.warnings);

        Ok(ParsedResume {
            contact,
            education,
            experience,
            skills: m.skills,
            warnings,
        })
    }

    /// Deterministic plain-text form that parses back to the same contact
    /// and skills.
    pub fn render(&self, r: &ParsedResume) -> String {
        render_with(r, self.lexicon)
    }
}

pub fn parse_resume(text: &str) -> Result<ParsedResume, ResumeError> {
    ResumeParser::default().parse(text)
}

pub fn render(r: &ParsedResume) -> String {
    render_with(r, SkillLexicon::bundled())
}

fn render_with(r: &ParsedResume, lexicon: &SkillLexicon) -> String {
    let mut out = String::new();
    let c = &r.contact;
    if let Some(n) = &c.name {
        out.push_str(&format!("Name: {n}\n"));
    }
    if let Some(e) = &c.email {
        out.push_str(&format!("Email: {e}\n"));
    }
    if let Some(p) = &c.phone {
        out.push_str(&format!("Phone: {p}\n"));
    }
    if let Some(a) = &c.address {
        out.push_str(&format!("Address: {a}\n"));
    }
    if !r.education.is_empty() {
        out.push_str("\nEDUCATION\n");
        for e in &r.education {
            let mut parts = vec![e.degree.clone()];
            if !e.institution.is_empty() {
                parts.push(e.institution.clone());
            }
            if let Some(y) = e.year {
                parts.push(y.to_string());
            }
            if let Some(g) = e.gpa {
                parts.push(format!("CGPA {g}"));
            }
            out.push_str(&parts.join(", "));
            out.push('\n');
        }
    }
    if !r.experience.is_empty() {
        out.push_str("\nEXPERIENCE\n");
        for e in &r.experience {
            let dates = match (e.start, e.end) {
                (Some(s), Some(t)) => format!(" | {} - {}", s.render(), t.render()),
                (Some(s), None) => format!(" | {}", s.render()),
                _ => String::new(),
            };
            out.push_str(&format!("{} | {}{dates}\n", e.title, e.company));
            for b in &e.bullets {
                out.push_str(&format!("- {b}\n"));
            }
        }
    }
    if !r.skills.is_empty() {
        out.push_str("\nSKILLS\n");
        let names: Vec<String> = r.skills.iter().map(|s| lexicon.display(s)).collect();
        out.push_str(&names.join(", "));
        out.push('\n');
    }
    out
}
