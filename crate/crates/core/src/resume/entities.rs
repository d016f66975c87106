use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::recommender::EducationLevel;

const MONTHS: [&str; 12] = ["jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"];
const MONTH_NAMES: [&str; 12] = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"];

const DATE: &str = r"(?:(?:jan|feb|mar|apr|may|jun|jul|aug|sep|sept|oct|nov|dec)[a-z]*\.?,?\s*'?\d{4}|\d{1,2}\s*/\s*\d{4}|\d{4})";
const PRESENT: &str = r"(?:present|current|currently|till\s+date|till\s+now|to\s+date|now|ongoing|date)";

pub(crate) static DATE_RANGE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(&format!(r"(?i)\b({DATE})\s*(?:-|–|—|to|till|until)\s*({DATE}|{PRESENT})\b")).unwrap()
});
static SINCE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(&format!(r"(?i)\b(?:since|from)\s+({DATE})\b")).unwrap());
static MONTH_YEAR: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^([a-z]{3})[a-z]*\.?,?\s*'?(\d{4})$").unwrap());
static NUM_MONTH_YEAR: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^(\d{1,2})\s*/\s*(\d{4})$").unwrap());
static YEAR_ONLY: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^(\d{4})$").unwrap());
static PRESENT_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(&format!(r"(?i)^{PRESENT}$")).unwrap());
static YEAR_ANY: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\b(19\d{2}|20\d{2})\b").unwrap());
static GPA: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)(?:\b(?:c\.?g\.?p\.?a|s\.?g\.?p\.?a|gpa|cpi)\b\s*(?:of|:|-|=)?\s*(\d{1,2}(?:\.\d{1,2})?))|(?:\b(\d(?:\.\d{1,2})?)\s*/\s*10\b)")
        .unwrap()
});
static BULLET: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\s*(?:[-•*▪●◦‣·>]|o\s|\d{1,2}[.)]\s)\s*").unwrap());

/// A resume date as written: month and year, a bare year, or "present".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResumeDate {
    YearMonth { year: i32, month: u32 },
    Year(i32),
    Present,
}

impl fmt::Display for ResumeDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResumeDate::YearMonth { year, month } => write!(f, "{year:04}-{month:02}"),
            ResumeDate::Year(y) => write!(f, "{y:04}"),
            ResumeDate::Present => f.write_str("present"),
        }
    }
}

impl FromStr for ResumeDate {
    type Err = String;

    /// Parses the canonical forms written by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "present" {
            return Ok(ResumeDate::Present);
        }
        let bad = || format!("invalid date '{s}'");
        match s.split_once('-') {
            Some((y, m)) => {
                let year = y.parse().map_err(|_| bad())?;
                let month: u32 = m.parse().map_err(|_| bad())?;
                if !(1..=12).contains(&month) {
                    return Err(bad());
                }
                Ok(ResumeDate::YearMonth { year, month })
            }
            None => s.parse().map(ResumeDate::Year).map_err(|_| bad()),
        }
    }
}

impl Serialize for ResumeDate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ResumeDate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl ResumeDate {
    /// Human form used when rendering a resume.
    pub fn render(&self) -> String {
        match self {
            ResumeDate::YearMonth { year, month } => format!("{} {year}", MONTH_NAMES[*month as usize - 1]),
            ResumeDate::Year(y) => y.to_string(),
            ResumeDate::Present => "Present".into(),
        }
    }
}

/// "MMM YYYY", "MM/YYYY", "YYYY" or "Present"; years outside
/// [1950, current_year + 1] are rejected.
pub fn parse_date(s: &str, current_year: i32) -> Option<ResumeDate> {
    let s = s.trim();
    let year_ok = |y: i32| (1950..=current_year + 1).contains(&y);
    if PRESENT_RE.is_match(s) {
        return Some(ResumeDate::Present);
    }
    if let Some(c) = MONTH_YEAR.captures(s) {
        let mon = c[1].to_lowercase();
        let month = MONTHS.iter().position(|m| *m == mon)? as u32 + 1;
        let year: i32 = c[2].parse().ok()?;
        return year_ok(year).then_some(ResumeDate::YearMonth { year, month });
    }
    if let Some(c) = NUM_MONTH_YEAR.captures(s) {
        let month: u32 = c[1].parse().ok()?;
        let year: i32 = c[2].parse().ok()?;
        return ((1..=12).contains(&month) && year_ok(year)).then_some(ResumeDate::YearMonth { year, month });
    }
    if let Some(c) = YEAR_ONLY.captures(s) {
        let year: i32 = c[1].parse().ok()?;
        return year_ok(year).then_some(ResumeDate::Year(year));
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Education {
    pub degree: String,
    pub institution: String,
    pub year: Option<i32>,
    pub gpa: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experience {
    pub company: String,
    pub title: String,
    pub start: Option<ResumeDate>,
    pub end: Option<ResumeDate>,
    #[serde(default)]
    pub bullets: Vec<String>,
}

/// (pattern, canonical label), most specific first.
pub(crate) static DEGREES: LazyLock<Vec<(Regex, &'static str)>> = LazyLock::new(|| {
    let spec: &[(&str, &str)] = &[
        (r"(?i)\bph\.?\s?d\b|\bdoctor of philosophy\b|\bdoctorate\b", "PhD"),
        (r"(?i)\bm\.?\s?tech\b|\bmaster of technology\b|\bm\.\s?e\.", "M.Tech"),
        (r"(?i)\bm\.?\s?sc\b|\bmaster of science\b", "M.Sc"),
        (r"(?i)\bmca\b|\bmaster of computer applications?\b", "MCA"),
        (r"(?i)\bmba\b|\bpgdm\b|\bmaster of business administration\b", "MBA"),
        (r"(?i)\bm\.?\s?com\b|\bmaster of commerce\b", "M.Com"),
        (r"\bM\.\s?A\b\.?|\bMA\b|(?i:\bmaster of arts\b)", "M.A."),
        (r"(?i)\bb\.?\s?ed\b|\bbachelor of education\b", "B.Ed"),
        (r"(?i)\bb\.?\s?tech\b|\bbachelor of technology\b", "B.Tech"),
        (r"\bB\.\s?E\b\.?|\bBE\b|(?i:\bbachelor of engineering\b)", "B.E."),
        (r"(?i)\bb\.?\s?sc\b|\bbachelor of science\b", "B.Sc"),
        (r"(?i)\bbca\b|\bbachelor of computer applications?\b", "BCA"),
        (r"(?i)\bbba\b|\bbachelor of business administration\b", "BBA"),
        (r"(?i)\bb\.?\s?com\b|\bbachelor of commerce\b", "B.Com"),
        (r"\bB\.\s?A\b\.?|\bBA\b|(?i:\bbachelor of arts\b)", "B.A."),
        (r"(?i)\bdiploma\b|\bpolytechnic\b", "Diploma"),
        (r"(?i)\biti\b|\bindustrial training institute\b", "ITI"),
        (r"(?i)\b12th\b|\bxii\b|\bsenior secondary\b|\bhigher secondary\b|\bhsc\b|\bintermediate\b|\b10\s?\+\s?2\b", "12th"),
        (r"(?i)\b10th\b|\bmatriculation\b|\bmatric\b|\bssc\b|\bsecondary school\b|\bhigh school\b", "10th"),
    ];
    spec.iter().map(|(p, l)| (Regex::new(p).unwrap(), *l)).collect()
});

pub fn degree_level(label: &str) -> EducationLevel {
    match label {
        "PhD" => EducationLevel::Doctorate,
        "M.Tech" | "M.Sc" | "MCA" | "MBA" | "M.Com" | "M.A." => EducationLevel::Master,
        "B.Tech" | "B.E." | "B.Sc" | "BCA" | "BBA" | "B.Com" | "B.A." | "B.Ed" => EducationLevel::Bachelor,
        "Diploma" | "ITI" => EducationLevel::Diploma,
        "12th" => EducationLevel::HigherSecondary,
        "10th" => EducationLevel::Secondary,
        _ => EducationLevel::None,
    }
}

/// Leftmost degree mention; on equal starts the longer match wins.
pub fn find_degree(line: &str) -> Option<&'static str> {
    DEGREES
        .iter()
        .filter_map(|(re, label)| re.find(line).map(|m| (m.start(), std::cmp::Reverse(m.len()), *label)))
        .min()
        .map(|(_, _, l)| l)
}

const INSTITUTION_WORDS: &[&str] = &[
    "university", "college", "institute", "institution", "school", "iit", "nit", "iiit", "academy", "polytechnic",
    "vidyalaya", "vidyapeeth", "board", "cbse", "pseb", "icse", "campus", "mahavidyalaya",
];

fn segments(line: &str) -> Vec<String> {
    line.split([',', '|', '(', ')', ';', '–', '—'])
        .flat_map(|s| s.split(" - "))
        .map(|s| s.trim().trim_matches(|c: char| c == '.' || c == ':').trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn contains_word(hay: &str, words: &[&str]) -> bool {
    let lower = hay.to_lowercase();
    lower
        .split(|c: char| !c.is_alphanumeric())
        .any(|w| words.contains(&w))
}

fn institution_in(line: &str) -> Option<String> {
    segments(line).into_iter().find(|s| contains_word(s, INSTITUTION_WORDS))
}

fn last_year(line: &str, current_year: i32) -> Option<i32> {
    YEAR_ANY
        .captures_iter(line)
        .filter_map(|c| c[1].parse::<i32>().ok())
        .filter(|y| (1950..=current_year + 1).contains(y))
        .last()
}

fn gpa_in(line: &str) -> Option<f64> {
    let c = GPA.captures(line)?;
    let v: f64 = c.get(1).or_else(|| c.get(2))?.as_str().parse().ok()?;
    (0.0..=10.0).contains(&v).then_some(v)
}

pub fn extract_education(section: &str, current_year: i32) -> (Vec<Education>, Vec<String>) {
    let mut out: Vec<Education> = Vec::new();
    let mut warnings = Vec::new();
    let mut pending_institution: Option<String> = None;
    let mut current: Option<Education> = None;
    for raw in section.lines() {
        let line = BULLET.replace(raw, "");
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(label) = find_degree(line) {
            if let Some(done) = current.take() {
                out.push(done);
            }
            let inst = institution_in(line).or_else(|| pending_institution.take()).unwrap_or_default();
            current = Some(Education {
                degree: label.to_string(),
                institution: inst,
                year: last_year(line, current_year),
                gpa: gpa_in(line),
            });
            continue;
        }
        let inst = institution_in(line);
        match current.as_mut() {
            Some(e) if e.institution.is_empty() && inst.is_some() => {
                e.institution = inst.unwrap();
                e.year = last_year(line, current_year).or(e.year);
                e.gpa = gpa_in(line).or(e.gpa);
            }
            Some(_) if inst.is_some() => pending_institution = inst,
            Some(e) => {
                e.year = last_year(line, current_year).or(e.year);
                e.gpa = gpa_in(line).or(e.gpa);
            }
            None => {
                if inst.is_some() {
                    pending_institution = inst;
                }
            }
        }
    }
    if let Some(done) = current {
        out.push(done);
    }
    if out.is_empty() && !section.trim().is_empty() {
        warnings.push("education: no degree recognized".to_string());
    }
    for e in &out {
        if e.institution.is_empty() {
            warnings.push(format!("education: no institution for {}", e.degree));
        }
    }
    (out, warnings)
}

const TITLE_WORDS: &[&str] = &[
    "engineer", "developer", "analyst", "clerk", "officer", "manager", "assistant", "teacher", "lecturer",
    "professor", "nurse", "accountant", "intern", "trainee", "executive", "consultant", "operator", "designer",
    "lead", "architect", "administrator", "technician", "associate", "specialist", "coordinator", "supervisor",
    "inspector", "scientist", "head", "director", "representative", "agent", "tester", "programmer",
    "stenographer", "steno", "typist", "constable", "patwari", "helper", "fitter", "electrician", "driver",
    "cashier", "auditor", "instructor", "tutor", "counsellor", "counselor", "pharmacist", "attendant",
    "secretary", "receptionist", "worker", "volunteer", "apprentice", "foreman", "surveyor", "draftsman",
    "librarian", "storekeeper", "guard", "mechanic", "welder", "chef", "cook", "writer", "editor", "marketer",
    "salesman", "advisor", "adviser", "faculty", "principal", "doctor", "physician", "pharmacist",
];

const COMPANY_WORDS: &[&str] = &[
    "ltd", "limited", "pvt", "private", "inc", "llp", "llc", "corp", "corporation", "company", "co",
    "technologies", "technology", "solutions", "services", "systems", "consultancy", "consultants", "infotech",
    "bank", "hospital", "school", "college", "university", "institute", "department", "dept", "board",
    "authority", "municipal", "ministry", "government", "govt", "council", "enterprises", "industries", "group",
    "labs", "foundation", "ngo", "trust", "agency", "store", "stores", "mart", "centre", "center", "clinic",
    "academy", "motors", "steels", "textiles", "pharma", "pharmaceuticals", "bpo", "software", "nigam", "sansthan",
];

fn split_header(text: &str) -> (Vec<String>, Option<(String, String)>) {
    // "Title at Company"
    let lower = text.to_lowercase();
    if let Some(i) = lower.find(" at ") {
        let title = text[..i].trim().to_string();
        let rest = &text[i + 4..];
        let segs = segments(rest);
        if let Some(company) = segs.first() {
            let title = segments(&title).last().cloned().unwrap_or(title);
            return (segs.clone(), Some((title, company.clone())));
        }
    }
    (segments(text), None)
}

fn experience_from_header(header: &str, bullets: Vec<String>, current_year: i32, warnings: &mut Vec<String>) -> Option<Experience> {
    let mut text = header.to_string();
    let (mut start, mut end) = (None, None);
    if let Some(c) = DATE_RANGE.captures(header) {
        start = parse_date(&c[1], current_year);
        end = parse_date(&c[2], current_year);
        if start.is_none() || end.is_none() {
            warnings.push(format!("experience: unreadable dates '{}'", &c[0]));
        }
        text = header.replacen(&c[0], " ", 1);
    } else if let Some(c) = SINCE.captures(header) {
        start = parse_date(&c[1], current_year);
        end = Some(ResumeDate::Present);
        text = header.replacen(&c[0], " ", 1);
    }
    let (segs, at_split) = split_header(&text);
    let (title, company) = match at_split {
        Some(tc) => tc,
        None => {
            let title_idx = segs.iter().position(|s| contains_word(s, TITLE_WORDS));
            let company_idx = segs
                .iter()
                .enumerate()
                .position(|(i, s)| Some(i) != title_idx && contains_word(s, COMPANY_WORDS))
                .or_else(|| (0..segs.len()).find(|i| Some(*i) != title_idx));
            let title_idx = title_idx.or_else(|| (0..segs.len()).find(|i| Some(*i) != company_idx));
            let pick = |i: Option<usize>| i.map(|i| segs[i].clone()).unwrap_or_default();
            (pick(title_idx), pick(company_idx))
        }
    };
    if title.is_empty() && company.is_empty() {
        warnings.push(format!("experience: could not read entry '{}'", header.trim()));
        return None;
    }
    if start.is_none() {
        warnings.push(format!("experience: no dates for '{}'", header.trim()));
    }
    Some(Experience {
        company,
        title,
        start,
        end,
        bullets,
    })
}

pub fn extract_experience(section: &str, current_year: i32) -> (Vec<Experience>, Vec<String>) {
    let mut out = Vec::new();
    let mut warnings = Vec::new();
    let mut header: Vec<String> = Vec::new();
    let mut bullets: Vec<String> = Vec::new();
    let mut flush = |header: &mut Vec<String>, bullets: &mut Vec<String>, warnings: &mut Vec<String>| {
        if !header.is_empty() {
            let h = header.join(" | ");
            if let Some(e) = experience_from_header(&h, std::mem::take(bullets), current_year, warnings) {
                out.push(e);
            }
        }
        header.clear();
        bullets.clear();
    };
    for raw in section.lines() {
        if raw.trim().is_empty() {
            continue;
        }
        let is_bullet = BULLET.is_match(raw);
        let text = BULLET.replace(raw, "").trim().to_string();
        let prose = !DATE_RANGE.is_match(&text) && (text.split_whitespace().count() > 12 || text.ends_with('.'));
        if is_bullet || (prose && !header.is_empty()) {
            if header.is_empty() {
                continue;
            }
            bullets.push(text);
            continue;
        }
        let starts_new = !bullets.is_empty()
            || header.len() >= 3
            || (DATE_RANGE.is_match(&text) && header.iter().any(|h| DATE_RANGE.is_match(h)));
        if starts_new {
            flush(&mut header, &mut bullets, &mut warnings);
        }
        header.push(text);
    }
    flush(&mut header, &mut bullets, &mut warnings);
    (out, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NOW: i32 = 2026;

    #[test]
    fn date_forms() {
        assert_eq!(parse_date("Jan 2020", NOW), Some(ResumeDate::YearMonth { year: 2020, month: 1 }));
        assert_eq!(parse_date("September, 2019", NOW), Some(ResumeDate::YearMonth { year: 2019, month: 9 }));
        assert_eq!(parse_date("03/2018", NOW), Some(ResumeDate::YearMonth { year: 2018, month: 3 }));
        assert_eq!(parse_date("2017", NOW), Some(ResumeDate::Year(2017)));
        assert_eq!(parse_date("Present", NOW), Some(ResumeDate::Present));
        assert_eq!(parse_date("13/2018", NOW), None);
        assert_eq!(parse_date("1949", NOW), None);
        assert_eq!(parse_date("2028", NOW), None);
        assert_eq!(parse_date("2027", NOW), Some(ResumeDate::Year(2027)));
        assert_eq!(parse_date("Summer 2019", NOW), None);
    }

    #[test]
    fn date_strings_round_trip() {
        for d in [ResumeDate::YearMonth { year: 2020, month: 3 }, ResumeDate::Year(2011), ResumeDate::Present] {
            assert_eq!(d.to_string().parse::<ResumeDate>().unwrap(), d);
            assert_eq!(parse_date(&d.render(), NOW), Some(d));
        }
    }

    #[test]
    fn degree_labels() {
        assert_eq!(find_degree("B.Tech (Computer Science)"), Some("B.Tech"));
        assert_eq!(find_degree("Bachelor of Science in Physics"), Some("B.Sc"));
        assert_eq!(find_degree("Senior Secondary (PSEB)"), Some("12th"));
        assert_eq!(find_degree("Matriculation, 2012"), Some("10th"));
        assert_eq!(find_degree("B.Ed from GNDU"), Some("B.Ed"));
        assert_eq!(find_degree("I want to be a teacher"), None);
        assert_eq!(degree_level("MCA"), EducationLevel::Master);
    }

    #[test]
    fn education_one_line_and_two_line() {
        let t = "B.Tech in Computer Science, Punjab Engineering College, 2019, CGPA 8.1\n\
                 Guru Nanak Dev University, Amritsar\nM.Sc Physics - 2021 - 7.5/10";
        let (e, w) = extract_education(t, NOW);
        assert!(w.is_empty(), "{w:?}");
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].institution, "Punjab Engineering College");
        assert_eq!(e[0].year, Some(2019));
        assert_eq!(e[0].gpa, Some(8.1));
        assert_eq!(e[1].degree, "M.Sc");
        assert_eq!(e[1].institution, "Guru Nanak Dev University");
        assert_eq!(e[1].gpa, Some(7.5));
    }

    #[test]
    fn experience_formats() {
        let t = "Software Engineer, Infosys Ltd (Jan 2020 – Present)\n- Built APIs\n- Wrote tests\n\
                 Clerk | Punjab National Bank | 03/2018 - 12/2019\n\
                 Data Analyst at TCS, Mohali, 2016 to 2018\n• Dashboards";
        let (e, w) = extract_experience(t, NOW);
        assert!(w.is_empty(), "{w:?}");
        assert_eq!(e.len(), 3);
        assert_eq!((e[0].title.as_str(), e[0].company.as_str()), ("Software Engineer", "Infosys Ltd"));
        assert_eq!(e[0].start, Some(ResumeDate::YearMonth { year: 2020, month: 1 }));
        assert_eq!(e[0].end, Some(ResumeDate::Present));
        assert_eq!(e[0].bullets, ["Built APIs", "Wrote tests"]);
        assert_eq!((e[1].title.as_str(), e[1].company.as_str()), ("Clerk", "Punjab National Bank"));
        assert_eq!(e[1].end, Some(ResumeDate::YearMonth { year: 2019, month: 12 }));
        assert_eq!((e[2].title.as_str(), e[2].company.as_str()), ("Data Analyst", "TCS"));
        assert_eq!(e[2].start, Some(ResumeDate::Year(2016)));
    }

    #[test]
    fn company_line_then_title_line() {
        let t = "Larsen & Toubro Limited, Ludhiana\nSite Engineer | Jun 2018 - Dec 2020\n- Supervised work";
        let (e, _) = extract_experience(t, NOW);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].company, "Larsen & Toubro Limited");
        assert_eq!(e[0].title, "Site Engineer");
    }
}
