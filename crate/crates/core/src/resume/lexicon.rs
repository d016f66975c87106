use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::ResumeError;

const BUNDLED_LEXICON: &str = include_str!("../../data/skills.tsv");

static BUNDLED: LazyLock<SkillLexicon> =
    LazyLock::new(|| SkillLexicon::from_tsv(BUNDLED_LEXICON).expect("bundled lexicon parses"));

static VERSION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)^v?\d+(\.\d+)*(\.x)?[a-z]?$").unwrap());
static GLUED_VERSION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^(.*?[a-z+#])v?\d+(\.\d+)*$").unwrap());

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkillCategory {
    Technical,
    Soft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkillEntry {
    pub canonical: String,
    pub category: SkillCategory,
    pub surfaces: Vec<String>,
}

/// Surface form to canonical id map, loaded from a TSV of
/// `canonical_id<TAB>category<TAB>surface1|surface2|...`.
#[derive(Debug, Clone)]
pub struct SkillLexicon {
    entries: BTreeMap<String, SkillEntry>,
    surfaces: HashMap<String, String>,
    max_words: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SkillMatch {
    pub skills: BTreeSet<String>,
    pub warnings: Vec<String>,
}

fn normalize_surface(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

fn trim_word(w: &str) -> &str {
    w.trim_matches(|c: char| "\"'()[]{}:;,!?*“”‘’".contains(c))
}

impl SkillLexicon {
    pub fn bundled() -> &'static SkillLexicon {
        &BUNDLED
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ResumeError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ResumeError::LexiconMissing(format!("{}: {e}", path.display())))?;
        Self::from_tsv(&text)
    }

    pub fn from_tsv(text: &str) -> Result<Self, ResumeError> {
        let mut entries = BTreeMap::new();
        let mut surfaces = HashMap::new();
        let mut max_words = 1;
        for (no, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(ResumeError::Lexicon(format!("line {}: expected 3 tab-separated fields", no + 1)));
            }
            let canonical = fields[0].trim().to_string();
            let category = match fields[1].trim() {
                "technical" => SkillCategory::Technical,
                "soft" => SkillCategory::Soft,
                other => return Err(ResumeError::Lexicon(format!("line {}: unknown category '{other}'", no + 1))),
            };
            let mut forms: Vec<String> = vec![canonical.replace('_', " "), canonical.clone()];
            forms.extend(fields[2].split('|').map(str::to_string));
            let mut kept = Vec::new();
            for f in forms {
                let key = normalize_surface(&f);
                if key.is_empty() {
                    continue;
                }
                if let Some(prev) = surfaces.get(&key) {
                    if prev != &canonical {
                        return Err(ResumeError::Lexicon(format!(
                            "line {}: surface '{key}' already maps to {prev}",
                            no + 1
                        )));
                    }
                    continue;
                }
                max_words = max_words.max(key.split(' ').count());
                surfaces.insert(key.clone(), canonical.clone());
                kept.push(key);
            }
            entries.insert(
                canonical.clone(),
                SkillEntry {
                    canonical,
                    category,
                    surfaces: kept,
                },
            );
        }
        if entries.is_empty() {
            return Err(ResumeError::LexiconMissing("lexicon has no entries".into()));
        }
        Ok(Self {
            entries,
            surfaces,
            max_words,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, canonical: &str) -> Option<&SkillEntry> {
        self.entries.get(canonical)
    }

    pub fn contains(&self, canonical: &str) -> bool {
        self.entries.contains_key(canonical)
    }

    pub fn canonical_ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Case-insensitive surface lookup.
    pub fn lookup(&self, surface: &str) -> Option<&str> {
        self.surfaces.get(&normalize_surface(surface)).map(String::as_str)
    }

    /// Human-readable name that maps back to `canonical`.
    pub fn display(&self, canonical: &str) -> String {
        canonical.replace('_', " ")
    }

    fn lookup_words(&self, words: &[String]) -> Option<&str> {
        self.surfaces.get(&words.join(" ")).map(String::as_str)
    }

    /// Canonical id for `words`, also trying a version glued to the last
    /// word ("python3", "html5").
    fn match_at(&self, words: &[String]) -> Option<&str> {
        if let Some(c) = self.lookup_words(words) {
            return Some(c);
        }
        let last = words.last()?;
        let stripped = last.strip_suffix('.').unwrap_or(last);
        if stripped != last {
            let mut w = words.to_vec();
            *w.last_mut().unwrap() = stripped.to_string();
            if let Some(c) = self.lookup_words(&w) {
                return Some(c);
            }
        }
        let caps = GLUED_VERSION.captures(stripped)?;
        let mut w = words.to_vec();
        *w.last_mut().unwrap() = caps[1].to_string();
        self.lookup_words(&w)
    }

    fn words_of(&self, phrase: &str) -> Vec<String> {
        let mut out = Vec::new();
        for raw in phrase.split_whitespace() {
            let w = trim_word(raw).to_lowercase();
            if w.is_empty() {
                continue;
            }
            if w.contains('/') && !self.surfaces.contains_key(&w) {
                out.extend(w.split('/').filter(|p| !p.is_empty()).map(str::to_string));
            } else {
                out.push(w);
            }
        }
        out
    }

    /// Greedy longest match within one phrase; a version token right after a
    /// match is absorbed. Returns canonical ids in order of appearance.
    pub fn match_phrase(&self, phrase: &str) -> Vec<String> {
        let words = self.words_of(phrase);
        let mut out = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let longest = self.max_words.min(words.len() - i);
            let found = (1..=longest)
                .rev()
                .find_map(|n| self.match_at(&words[i..i + n]).map(|c| (n, c.to_string())));
            match found {
                Some((n, c)) => {
                    i += n;
                    if i < words.len() && VERSION.is_match(words[i].trim_end_matches('.')) {
                        i += 1;
                    }
                    out.push(c);
                }
                None => i += 1,
            }
        }
        out
    }

    /// Canonical skills across phrases; a phrase with no match at all is
    /// reported in `warnings`.
    pub fn normalize_skills<S: AsRef<str>>(&self, phrases: &[S]) -> SkillMatch {
        let mut m = SkillMatch::default();
        for p in phrases {
            let p = p.as_ref().trim();
            if p.is_empty() {
                continue;
            }
            let found = self.match_phrase(p);
            if found.is_empty() {
                m.warnings.push(format!("unrecognized skill: {p}"));
            }
            m.skills.extend(found);
        }
        m
    }
}

/// Splits a skills block into list items.
pub fn skill_phrases(text: &str) -> Vec<String> {
    text.split(['\n', ',', ';', '|', '•', '·', '▪', '●'])
        .map(|p| {
            let p = p.trim().trim_start_matches(['-', '*', '–', '◦', '>']).trim();
            // "Languages: Python, Java" keeps only what follows the label
            match p.split_once(':') {
                Some((label, rest)) if label.split_whitespace().count() <= 3 && !rest.trim().is_empty() => {
                    rest.trim().to_string()
                }
                _ => p.to_string(),
            }
        })
        .filter(|p| !p.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> &'static SkillLexicon {
        SkillLexicon::bundled()
    }

    fn one(p: &str) -> Vec<String> {
        lex().match_phrase(p)
    }

    #[test]
    fn bundled_size() {
        assert!(lex().len() >= 500);
    }

    #[test]
    fn abbreviation() {
        assert_eq!(one("JS"), ["javascript"]);
    }

    #[test]
    fn version_suffix_is_stripped() {
        assert_eq!(one("Python 3.11"), ["python"]);
        assert_eq!(one("python3"), ["python"]);
        assert_eq!(one("Angular 14"), ["angular"]);
        assert_eq!(one("HTML5"), ["html"]);
    }

    #[test]
    fn compound_wins_over_parts() {
        assert_eq!(one("machine learning"), ["machine_learning"]);
        assert_eq!(one("Microsoft SQL Server 2019"), ["sql_server"]);
    }

    #[test]
    fn case_and_punctuation() {
        assert_eq!(one("C++"), ["cpp"]);
        assert_eq!(one("C#"), ["csharp"]);
        assert_eq!(one("Node.js."), ["nodejs"]);
        assert_eq!(one("(.NET)"), ["dotnet"]);
    }

    #[test]
    fn slash_lists_split_unless_a_surface() {
        assert_eq!(one("HTML/CSS"), ["html", "css"]);
        assert_eq!(one("CI/CD"), ["ci_cd"]);
    }

    #[test]
    fn unknown_phrase_warns() {
        let m = lex().normalize_skills(&["Python", "underwater basket weaving"]);
        assert_eq!(m.skills, BTreeSet::from(["python".to_string()]));
        assert_eq!(m.warnings.len(), 1);
    }

    #[test]
    fn canonical_ids_are_surfaces() {
        for id in lex().canonical_ids() {
            assert_eq!(lex().lookup(&lex().display(id)), Some(id), "{id}");
        }
    }

    #[test]
    fn phrases_from_block() {
        assert_eq!(
            skill_phrases("Languages: Python, Java\n• Excel; Tally ERP 9"),
            ["Python", "Java", "Excel", "Tally ERP 9"]
        );
    }

    #[test]
    fn malformed_lexicon() {
        assert!(matches!(SkillLexicon::from_tsv("# only comments\n"), Err(ResumeError::LexiconMissing(_))));
        assert!(matches!(SkillLexicon::from_tsv("a\tweird\tx"), Err(ResumeError::Lexicon(_))));
        assert!(SkillLexicon::from_tsv("a\tsoft\tx\nb\tsoft\tx").is_err());
        assert!(matches!(SkillLexicon::load("/nonexistent/skills.tsv"), Err(ResumeError::LexiconMissing(_))));
    }
}
