use std::sync::LazyLock;

use indexmap::IndexMap;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::contact::{EMAIL, PHONE};
use super::entities::{DATE_RANGE, DEGREES};
use super::lexicon::{skill_phrases, SkillLexicon};
use super::ResumeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Contact,
    Summary,
    Education,
    Experience,
    Skills,
    Projects,
    Certifications,
    Languages,
    Other,
    Unclassified,
}

impl Section {
    pub fn as_str(self) -> &'static str {
        match self {
            Section::Contact => "contact",
            Section::Summary => "summary",
            Section::Education => "education",
            Section::Experience => "experience",
            Section::Skills => "skills",
            Section::Projects => "projects",
            Section::Certifications => "certifications",
            Section::Languages => "languages",
            Section::Other => "other",
            Section::Unclassified => "unclassified",
        }
    }
}

const HEADERS: &[(Section, &[&str])] = &[
    (
        Section::Contact,
        &["contact", "contact details", "contact information", "personal details", "personal information", "personal profile", "personal data"],
    ),
    (
        Section::Summary,
        &["summary", "profile", "objective", "career objective", "professional summary", "profile summary", "about me", "career summary", "professional profile"],
    ),
    (
        Section::Education,
        &["education", "educational qualification", "educational qualifications", "academic qualification", "academic qualifications", "academics", "qualifications", "qualification", "academic background", "education and training", "academic details", "educational details"],
    ),
    (
        Section::Experience,
        &["experience", "work experience", "professional experience", "employment history", "work history", "employment", "career history", "internships", "internship", "experience details", "relevant experience", "employment details"],
    ),
    (
        Section::Skills,
        &["skills", "technical skills", "key skills", "core competencies", "skill set", "skillset", "skills and tools", "soft skills", "it skills", "computer skills", "technical proficiency", "areas of expertise", "competencies", "tools and technologies"],
    ),
    (Section::Projects, &["projects", "academic projects", "key projects", "personal projects", "project work"]),
    (
        Section::Certifications,
        &["certifications", "certification", "certificates", "courses", "training", "trainings", "certifications and training", "licenses and certifications"],
    ),
    (Section::Languages, &["languages", "languages known", "language proficiency", "linguistic proficiency"]),
    (
        Section::Other,
        &["achievements", "awards", "hobbies", "interests", "references", "declaration", "extracurricular activities", "extra curricular activities", "activities", "strengths", "publications", "volunteering"],
    ),
];

static UNDERLINE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\s*[-=_~*#]{3,}\s*$").unwrap());

fn header_key(s: &str) -> String {
    s.to_lowercase()
        .replace('&', " and ")
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect::<String>()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

fn lookup_header(s: &str) -> Option<Section> {
    let key = header_key(s);
    if key.is_empty() || key.split(' ').count() > 4 {
        return None;
    }
    HEADERS
        .iter()
        .find(|(_, names)| names.contains(&key.as_str()))
        .map(|(sec, _)| *sec)
}

/// A header line, possibly carrying content after a colon ("Skills: Python").
pub fn header_of(line: &str) -> Option<(Section, Option<&str>)> {
    let t = line.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((head, rest)) = t.split_once(':') {
        if let Some(sec) = lookup_header(head) {
            let rest = rest.trim();
            return Some((sec, (!rest.is_empty()).then_some(rest)));
        }
    }
    lookup_header(t).map(|s| (s, None))
}

fn push(map: &mut IndexMap<Section, String>, sec: Section, text: &str) {
    let text = text.trim_matches('\n');
    if text.trim().is_empty() {
        map.entry(sec).or_default();
        return;
    }
    let body = map.entry(sec).or_default();
    if !body.is_empty() {
        body.push('\n');
    }
    body.push_str(text);
}

pub(crate) fn has_contact_marker(s: &str) -> bool {
    EMAIL.is_match(s) || PHONE.is_match(s)
}

/// Ordered section map. Header lines drive the split; text above the first
/// header is contact. Without any header, a positional and keyword fallback
/// is used.
pub fn segment_sections_with(text: &str, lexicon: &SkillLexicon) -> Result<IndexMap<Section, String>, ResumeError> {
    if text.trim().is_empty() {
        return Err(ResumeError::EmptyText);
    }
    let lines: Vec<&str> = text.lines().collect();
    if !lines.iter().any(|l| header_of(l).is_some()) {
        return Ok(headerless(&lines, lexicon));
    }
    let mut map: IndexMap<Section, String> = IndexMap::new();
    let mut current = Section::Contact;
    let mut buf: Vec<&str> = Vec::new();
    for line in lines {
        if UNDERLINE.is_match(line) {
            continue;
        }
        if let Some((sec, inline)) = header_of(line) {
            if !(current == Section::Contact && buf.iter().all(|l| l.trim().is_empty())) {
                push(&mut map, current, &buf.join("\n"));
            }
            buf.clear();
            current = sec;
            if let Some(rest) = inline {
                buf.push(rest);
            }
            continue;
        }
        buf.push(line);
    }
    push(&mut map, current, &buf.join("\n"));
    Ok(map)
}

pub fn segment_sections(text: &str) -> Result<IndexMap<Section, String>, ResumeError> {
    segment_sections_with(text, SkillLexicon::bundled())
}

const CONTACT_LINES: usize = 8;

fn blocks<'a>(lines: &[&'a str]) -> Vec<Vec<&'a str>> {
    let mut out: Vec<Vec<&str>> = Vec::new();
    let mut cur = Vec::new();
    for l in lines {
        if l.trim().is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !UNDERLINE.is_match(l) {
            cur.push(*l);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn headerless(lines: &[&str], lexicon: &SkillLexicon) -> IndexMap<Section, String> {
    let mut blocks = blocks(lines);
    let mut map = IndexMap::new();
    // Contact: leading blocks within the first 8 lines, up to the last one
    // holding an email or phone number.
    let mut seen = 0;
    let mut contact_end = None;
    for (i, b) in blocks.iter().enumerate() {
        if seen >= CONTACT_LINES {
            break;
        }
        let window = &b[..b.len().min(CONTACT_LINES - seen)];
        if window.iter().any(|l| has_contact_marker(l)) {
            contact_end = Some(i);
        }
        seen += b.len();
    }
    if let Some(end) = contact_end {
        let mut contact: Vec<&str> = Vec::new();
        let mut rest_of_last = Vec::new();
        for (i, b) in blocks.drain(..=end).enumerate() {
            for l in b {
                if contact.len() < CONTACT_LINES || i < end {
                    contact.push(l);
                } else {
                    rest_of_last.push(l);
                }
            }
        }
        push(&mut map, Section::Contact, &contact.join("\n"));
        if !rest_of_last.is_empty() {
            blocks.insert(0, rest_of_last);
        }
    }
    let mut prev: Option<Section> = None;
    for b in blocks {
        let text = b.join("\n");
        let sec = classify_block(&text, lexicon);
        if prev == Some(sec) {
            let body = map.get_mut(&sec).expect("previous section exists");
            body.push('\n');
            body.push_str(&text);
        } else {
            push(&mut map, sec, &text);
        }
        prev = Some(sec);
    }
    if map.is_empty() {
        map.insert(Section::Unclassified, lines.join("\n").trim().to_string());
    }
    map
}

const KEYWORDS: &[(Section, &[(&str, f64)])] = &[
    (
        Section::Education,
        &[
            ("university", 2.0),
            ("college", 2.0),
            ("institute", 1.5),
            ("school", 1.5),
            ("cgpa", 2.0),
            ("gpa", 2.0),
            ("percentage", 1.0),
            ("degree", 1.5),
            ("graduated", 1.0),
            ("board", 1.0),
            ("bachelor", 2.0),
            ("master", 2.0),
        ],
    ),
    (
        Section::Experience,
        &[
            ("worked", 1.5),
            ("responsible", 1.0),
            ("responsibilities", 1.0),
            ("pvt", 1.5),
            ("ltd", 1.5),
            ("limited", 1.0),
            ("company", 1.0),
            ("present", 1.0),
            ("managed", 1.0),
            ("developed", 1.0),
            ("handled", 1.0),
            ("intern", 1.0),
        ],
    ),
    (
        Section::Summary,
        &[
            ("seeking", 1.5),
            ("objective", 2.0),
            ("passionate", 1.0),
            ("motivated", 1.0),
            ("looking for", 1.5),
            ("career", 1.0),
            ("aspiring", 1.5),
            ("opportunity", 1.0),
            ("years of experience", 1.5),
        ],
    ),
    (
        Section::Languages,
        &[("fluent", 1.5), ("native", 1.0), ("mother tongue", 2.0), ("read", 0.5), ("write", 0.5), ("speak", 1.0)],
    ),
    (Section::Projects, &[("project", 1.5), ("built", 1.0), ("implemented", 1.0), ("github", 1.0)]),
    (
        Section::Certifications,
        &[("certified", 2.0), ("certification", 2.0), ("certificate", 1.5), ("course", 1.0), ("coursera", 1.5), ("nptel", 1.5)],
    ),
];

/// Minimum score for a block to get a label.
const CLASSIFY_THRESHOLD: f64 = 1.0;

fn has_word(hay: &str, kw: &str) -> bool {
    hay.match_indices(kw).any(|(i, _)| {
        let before = hay[..i].chars().next_back();
        let after = hay[i + kw.len()..].chars().next();
        !before.is_some_and(char::is_alphanumeric) && !after.is_some_and(char::is_alphanumeric)
    })
}

/// Per-section linear score: keyword weights plus structural features
/// (degree names, date ranges, share of lexicon skills among list items).
pub fn section_scores(text: &str, lexicon: &SkillLexicon) -> Vec<(Section, f64)> {
    let lower = text.to_lowercase();
    let mut scores: Vec<(Section, f64)> = KEYWORDS
        .iter()
        .map(|(sec, kws)| {
            let s: f64 = kws.iter().filter(|(k, _)| has_word(&lower, k)).map(|(_, w)| w).sum();
            (*sec, s)
        })
        .collect();
    let add = |scores: &mut Vec<(Section, f64)>, sec: Section, v: f64| {
        if let Some(e) = scores.iter_mut().find(|(s, _)| *s == sec) {
            e.1 += v;
        } else {
            scores.push((sec, v));
        }
    };
    if DEGREES.iter().any(|(re, _)| re.is_match(text)) {
        add(&mut scores, Section::Education, 3.0);
    }
    if DATE_RANGE.is_match(text) {
        add(&mut scores, Section::Experience, 2.0);
    }
    let items = skill_phrases(text);
    if !items.is_empty() {
        let hits = items.iter().filter(|p| !lexicon.match_phrase(p).is_empty()).count();
        let short = items.iter().filter(|p| p.split_whitespace().count() <= 4).count();
        let share = hits as f64 / items.len() as f64;
        let shortness = short as f64 / items.len() as f64;
        add(&mut scores, Section::Skills, 4.0 * share * shortness);
    }
    scores
}

pub fn classify_block(text: &str, lexicon: &SkillLexicon) -> Section {
    let mut best: Option<(Section, f64)> = None;
    for (sec, s) in section_scores(text, lexicon) {
        if s >= CLASSIFY_THRESHOLD && best.is_none_or(|(_, b)| s > b) {
            best = Some((sec, s));
        }
    }
    best.map_or(Section::Unclassified, |(sec, _)| sec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_headers() {
        let t = "Asha Rani\nasha@mail.com\n\nEDUCATION\nB.Sc, Punjabi University, 2019\n\nSKILLS:\nPython, Excel\n";
        let m = segment_sections(t).unwrap();
        let keys: Vec<_> = m.keys().copied().collect();
        assert_eq!(keys, [Section::Contact, Section::Education, Section::Skills]);
        assert_eq!(m[&Section::Education], "B.Sc, Punjabi University, 2019");
        assert_eq!(m[&Section::Skills], "Python, Excel");
    }

    #[test]
    fn underlined_and_inline_headers() {
        let t = "Work Experience\n---------------\nClerk, PNB (2019 - 2021)\nSkills: Typing, Tally";
        let m = segment_sections(t).unwrap();
        assert_eq!(m[&Section::Experience], "Clerk, PNB (2019 - 2021)");
        assert_eq!(m[&Section::Skills], "Typing, Tally");
        assert!(!m.contains_key(&Section::Contact));
    }

    #[test]
    fn long_lines_are_not_headers() {
        assert!(header_of("Skills I picked up while volunteering at the camp").is_none());
        assert_eq!(header_of("  Technical Skills & Tools: ").map(|h| h.0), None);
        assert_eq!(header_of("Skills & Tools:").map(|h| h.0), Some(Section::Skills));
        assert_eq!(header_of("== EDUCATION ==").map(|h| h.0), Some(Section::Education));
    }

    #[test]
    fn single_word_is_unclassified() {
        let m = segment_sections("hello").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&Section::Unclassified], "hello");
    }

    #[test]
    fn headerless_resume() {
        let t = "Gurpreet Singh\ngurpreet.s@gmail.com\n+91 98140 12345\n\n\
                 B.Tech in Civil Engineering, Guru Nanak Dev Engineering College, 2018\n\n\
                 Site Engineer, Larsen & Toubro Ltd, Jan 2019 - Present\n- Supervised concrete work\n\n\
                 AutoCAD, STAAD Pro, MS Excel, Estimation";
        let m = segment_sections(t).unwrap();
        assert!(m[&Section::Contact].contains("gurpreet.s@gmail.com"));
        assert!(m[&Section::Education].contains("B.Tech"));
        assert!(m[&Section::Experience].contains("Site Engineer"));
        assert!(m[&Section::Skills].contains("AutoCAD"));
    }

    #[test]
    fn empty_text() {
        assert!(matches!(segment_sections(" \n"), Err(ResumeError::EmptyText)));
    }
}
