//! Plain-text question-bank grammar.
//!
//! ```text
//! Q1. Stem text, possibly wrapped
//! (A) first   (B) second
//! (C) third   (D) fourth
//! Answer: B
//! Explanation: optional free text
//! Stats: 42/100            correct/attempts, optional
//!
//! Answer Key
//! 1. B  2. C  3) A
//! ```
//!
//! Numbering may be `Q1.`, `1.` or `1)`; options `(A)`..`(D)` or `A)`..`D)`,
//! on separate lines or inline. Each key-block entry goes to the most recent
//! question with that printed number, so papers that restart numbering work.

use std::collections::HashSet;
use std::sync::LazyLock;

use regex::Regex;

use super::QuestionStats;

static QUESTION_START: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(?:[Qq]\.?\s*(\d{1,4})\s*[.):\-]?|(\d{1,4})\s*[.)])\s+(\S.*)$").unwrap()
});
static OPTION_START: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^(?:\(\s*([A-Da-d])\s*\)|([A-D])[.)])\s*").unwrap());
static INLINE_OPTION: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?:^|\s)(?:\(\s*([A-Da-d])\s*\)|([A-D])\))\s*").unwrap());
static ANSWER_LINE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)^(?:correct\s+(?:answer|option)|answer|ans)\s*[:.\-]\s*(.*)$").unwrap()
});
static KEY_LETTER: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^\(?\s*([A-Da-d])\s*\)?(?:[\s.):,;\-]|$)").unwrap());
static EXPLANATION_LINE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^(?:explanation|solution|exp)\s*[:.\-]\s*(.*)$").unwrap());
static STATS_LINE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^stats\s*:\s*(\d+)\s*/\s*(\d+)\s*$").unwrap());
static KEY_HEADER: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^(?:answer\s*key|answers|key)\s*[:\-]?\s*$").unwrap());
static KEY_PAIR: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(\d{1,4})\s*[.):\-]?\s*\(?\s*([A-Da-d])(?:\s*\))?").unwrap());

/// A question as written, before topic/difficulty/embedding are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct RawQuestion {
    pub q_id: String,
    pub number: u32,
    pub text: String,
    pub options: Vec<String>,
    pub answer_key: Option<char>,
    pub reference_answer: Option<String>,
    pub explanation: Option<String>,
    pub stats: Option<QuestionStats>,
}

#[derive(Debug, Default)]
struct Draft {
    number: u32,
    line: usize,
    block_key: Option<char>,
    text: String,
    options: Vec<String>,
    inline_key: Option<char>,
    answer_text: Option<String>,
    explanation: Option<String>,
    stats: Option<QuestionStats>,
    problems: Vec<String>,
    // Which field continuation lines extend.
    tail: Tail,
}

#[derive(Debug, Default, Clone, Copy, PartialEq)]
enum Tail {
    #[default]
    Stem,
    Option,
    Explanation,
    Closed,
}

fn option_index(m: &regex::Captures<'_>) -> usize {
    let c = m.get(1).or(m.get(2)).unwrap().as_str().chars().next().unwrap();
    (c.to_ascii_uppercase() as u8 - b'A') as usize
}

impl Draft {
    /// Splits `s` at option markers that continue the A, B, C, D sequence;
    /// returns the text before the first marker.
    fn take_options<'a>(&mut self, s: &'a str) -> &'a str {
        let mut cuts: Vec<(usize, usize, usize)> = Vec::new();
        let mut expected = self.options.len();
        for m in INLINE_OPTION.captures_iter(s) {
            let idx = option_index(&m);
            if idx == expected {
                let whole = m.get(0).unwrap();
                cuts.push((whole.start(), whole.end(), idx));
                expected += 1;
            }
        }
        let Some(&(first, _, _)) = cuts.first() else {
            return s;
        };
        for (i, &(_, end, _)) in cuts.iter().enumerate() {
            let stop = cuts.get(i + 1).map(|c| c.0).unwrap_or(s.len());
            self.options.push(s[end..stop].trim().to_string());
        }
        self.tail = Tail::Option;
        &s[..first]
    }

    fn push_option_line(&mut self, line: &str) {
        let m = OPTION_START.captures(line).unwrap();
        let idx = option_index(&m);
        if idx != self.options.len() {
            self.problems.push(format!(
                "option {} out of sequence",
                (b'A' + idx as u8) as char
            ));
            self.tail = Tail::Closed;
            return;
        }
        let rest = &line[m.get(0).unwrap().end()..];
        self.options.push(String::new());
        let head = self.take_options(rest).trim().to_string();
        self.options[idx] = head;
        self.tail = Tail::Option;
    }

    fn continue_with(&mut self, line: &str) {
        match self.tail {
            Tail::Stem => {
                let rest = self.take_options(line).trim().to_string();
                if !rest.is_empty() {
                    if self.options.is_empty() {
                        append(&mut self.text, &rest);
                    } else {
                        // Stem text after options started: attach to the previous one.
                        let n = self.options.len();
                        append(&mut self.options[n - 1], &rest);
                    }
                }
            }
            Tail::Option => {
                let n = self.options.len();
                let mut last = std::mem::take(&mut self.options[n - 1]);
                let head = self.take_options(line).trim().to_string();
                append(&mut last, &head);
                self.options[n - 1] = last;
            }
            Tail::Explanation => {
                if let Some(e) = self.explanation.as_mut() {
                    append(e, line);
                }
            }
            Tail::Closed => {}
        }
    }
}

fn append(buf: &mut String, s: &str) {
    let s = s.trim();
    if s.is_empty() {
        return;
    }
    if !buf.is_empty() {
        buf.push(' ');
    }
    buf.push_str(s);
}

/// A line made only of `n. X` pairs, e.g. `1. B  2) C, 3-(D)`.
fn key_pairs(line: &str) -> Option<Vec<(u32, char)>> {
    let mut pairs = Vec::new();
    let mut rest = String::new();
    let mut last = 0;
    for m in KEY_PAIR.captures_iter(line) {
        let whole = m.get(0).unwrap();
        let after = line[whole.end()..].chars().next();
        if after.is_some_and(char::is_alphanumeric) {
            continue;
        }
        rest.push_str(&line[last..whole.start()]);
        last = whole.end();
        let n: u32 = m[1].parse().ok()?;
        let c = m[2].chars().next()?.to_ascii_uppercase();
        pairs.push((n, c));
    }
    rest.push_str(&line[last..]);
    let only_separators = rest.chars().all(|c| c.is_whitespace() || ",;|".contains(c));
    (!pairs.is_empty() && only_separators).then_some(pairs)
}

#[derive(Debug, Default)]
pub struct RawBank {
    pub questions: Vec<RawQuestion>,
    pub warnings: Vec<String>,
}

pub fn parse_raw(text: &str) -> RawBank {
    let mut drafts: Vec<Draft> = Vec::new();
    let mut warnings = Vec::new();
    let mut in_key_block = false;
    let mut blank_since_item = false;

    for (ln, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() {
            blank_since_item = true;
            continue;
        }
        if KEY_HEADER.is_match(line) {
            in_key_block = true;
            if let Some(d) = drafts.last_mut() {
                d.tail = Tail::Closed;
            }
            continue;
        }
        if let Some(pairs) = key_pairs(line) {
            if in_key_block || drafts.last().is_some_and(|d| d.tail == Tail::Closed || blank_since_item) {
                in_key_block = true;
                for (n, c) in pairs {
                    match drafts.iter_mut().rev().find(|d| d.number == n) {
                        Some(d) if d.block_key.is_some_and(|prev| prev != c) => {
                            warnings.push(format!("line {}: conflicting key for question {n}", ln + 1));
                        }
                        Some(d) => d.block_key = Some(c),
                        None => warnings.push(format!("line {}: key for unknown question {n}", ln + 1)),
                    }
                }
                continue;
            }
        }
        in_key_block = false;
        if let Some(m) = QUESTION_START.captures(line) {
            let number: u32 = m.get(1).or(m.get(2)).unwrap().as_str().parse().unwrap_or(0);
            let mut d = Draft {
                number,
                line: ln + 1,
                ..Default::default()
            };
            let body = m.get(3).unwrap().as_str();
            let stem = d.take_options(body).trim().to_string();
            d.text = stem;
            if d.options.is_empty() {
                d.tail = Tail::Stem;
            }
            drafts.push(d);
            blank_since_item = false;
            continue;
        }
        let Some(d) = drafts.last_mut() else {
            continue;
        };
        if let Some(m) = ANSWER_LINE.captures(line) {
            let v = m[1].trim();
            match KEY_LETTER.captures(v) {
                Some(k) if !d.options.is_empty() || v.len() <= 3 => {
                    d.inline_key = Some(k[1].chars().next().unwrap().to_ascii_uppercase());
                }
                _ => d.answer_text = Some(v.to_string()),
            }
            d.tail = Tail::Closed;
            blank_since_item = false;
            continue;
        }
        if let Some(m) = EXPLANATION_LINE.captures(line) {
            d.explanation = Some(m[1].trim().to_string());
            d.tail = Tail::Explanation;
            blank_since_item = false;
            continue;
        }
        if let Some(m) = STATS_LINE.captures(line) {
            let correct: u32 = m[1].parse().unwrap_or(u32::MAX);
            let attempts: u32 = m[2].parse().unwrap_or(0);
            if attempts == 0 || correct > attempts {
                warnings.push(format!("line {}: ignoring stats {correct}/{attempts}", ln + 1));
            } else {
                d.stats = Some(QuestionStats { attempts, correct });
            }
            d.tail = Tail::Closed;
            continue;
        }
        if OPTION_START.is_match(line) && d.tail != Tail::Closed {
            d.push_option_line(line);
            blank_since_item = false;
            continue;
        }
        if !blank_since_item {
            d.continue_with(line);
        }
    }

    let mut questions = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for d in drafts {
        let label = format!("line {}: question {}", d.line, d.number);
        if let Some(p) = d.problems.first() {
            warnings.push(format!("{label}: {p}; skipped"));
            continue;
        }
        if d.text.is_empty() {
            warnings.push(format!("{label}: empty stem; skipped"));
            continue;
        }
        let block_key = d.block_key;
        let (options, answer_key, reference_answer) = if d.options.is_empty() {
            if d.inline_key.is_some() || block_key.is_some() {
                warnings.push(format!("{label}: answer key given but no options; skipped"));
                continue;
            }
            (Vec::new(), None, d.answer_text)
        } else {
            if d.options.len() != 4 {
                let missing: String = "ABCD".chars().skip(d.options.len()).collect();
                warnings.push(format!(
                    "{label}: expected options A-D, found {} (missing {missing}); skipped",
                    d.options.len()
                ));
                continue;
            }
            if d.options.iter().any(|o| o.is_empty()) {
                warnings.push(format!("{label}: empty option text; skipped"));
                continue;
            }
            let distinct: HashSet<String> = d.options.iter().map(|o| o.to_lowercase()).collect();
            if distinct.len() != 4 {
                warnings.push(format!("{label}: options are not distinct; skipped"));
                continue;
            }
            let key = match (d.inline_key, block_key) {
                (Some(a), Some(b)) if a != b => {
                    warnings.push(format!("{label}: inline answer {a} disagrees with key block {b}; using {a}"));
                    Some(a)
                }
                (a, b) => a.or(b),
            };
            let Some(key) = key else {
                warnings.push(format!("{label}: no answer key; skipped"));
                continue;
            };
            (d.options, Some(key), None)
        };
        let mut q_id = format!("q{}", d.number);
        let mut k = 2;
        while seen.contains(&q_id) {
            q_id = format!("q{}_{k}", d.number);
            k += 1;
        }
        seen.insert(q_id.clone());
        questions.push(RawQuestion {
            q_id,
            number: d.number,
            text: d.text,
            options,
            answer_key,
            reference_answer,
            explanation: d.explanation,
            stats: d.stats,
        });
    }
    RawBank { questions, warnings }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separate_line_options_and_inline_answer() {
        let b = parse_raw("Q1. What is 2 + 2?\n(A) 3\n(B) 4\n(C) 5\n(D) 6\nAnswer: B\n");
        assert!(b.warnings.is_empty(), "{:?}", b.warnings);
        let q = &b.questions[0];
        assert_eq!(q.q_id, "q1");
        assert_eq!(q.text, "What is 2 + 2?");
        assert_eq!(q.options, ["3", "4", "5", "6"]);
        assert_eq!(q.answer_key, Some('B'));
    }

    #[test]
    fn inline_options_and_bare_markers() {
        let b = parse_raw("1) Pick one (A) red (B) blue (C) green (D) white\nAns: (c)\n\n2. Next\nA) x B) y\nC) z D) w\nAnswer - D\n");
        assert!(b.warnings.is_empty(), "{:?}", b.warnings);
        assert_eq!(b.questions[0].options, ["red", "blue", "green", "white"]);
        assert_eq!(b.questions[0].answer_key, Some('C'));
        assert_eq!(b.questions[1].options, ["x", "y", "z", "w"]);
        assert_eq!(b.questions[1].answer_key, Some('D'));
    }

    #[test]
    fn spaced_parenthesis_marker() {
        let b = parse_raw("Q3. Odd one?\n( A) a1\n( B) b2\n( C) c3\n( D) d4\nAnswer: A");
        assert_eq!(b.questions.len(), 1, "{:?}", b.warnings);
        assert_eq!(b.questions[0].options[3], "d4");
    }

    #[test]
    fn missing_option_d_is_skipped() {
        let b = parse_raw("Q1. Stem\n(A) a\n(B) b\n(C) c\nAnswer: A\n\nQ2. Ok\n(A) a\n(B) b\n(C) c\n(D) d\nAnswer: C\n");
        assert_eq!(b.questions.len(), 1);
        assert_eq!(b.questions[0].q_id, "q2");
        assert_eq!(b.warnings.len(), 1);
        assert!(b.warnings[0].contains("missing D"), "{}", b.warnings[0]);
    }

    #[test]
    fn key_block_joins_by_number() {
        let text = "1. Alpha\n(A) a (B) b (C) c (D) d\n\n2. Beta\n(A) e (B) f (C) g (D) h\n\nAnswer Key\n1. C   2. (A)\n";
        let b = parse_raw(text);
        assert!(b.warnings.is_empty(), "{:?}", b.warnings);
        let keys: Vec<_> = b.questions.iter().map(|q| q.answer_key.unwrap()).collect();
        assert_eq!(keys, ['C', 'A']);
    }

    #[test]
    fn headerless_key_block_after_blank() {
        let text = "1. Alpha\n(A) a (B) b (C) c (D) d\n\n1. B\n";
        let b = parse_raw(text);
        assert_eq!(b.questions.len(), 1, "{:?}", b.warnings);
        assert_eq!(b.questions[0].answer_key, Some('B'));
    }

    #[test]
    fn key_blocks_follow_restarted_numbering() {
        let text = "1. One\n(A) a (B) b (C) c (D) d\nKey\n1. A\n1. Again\n(A) a (B) b (C) c (D) d\nAnswers:\n1. D\n";
        let b = parse_raw(text);
        let ids: Vec<_> = b.questions.iter().map(|q| (q.q_id.as_str(), q.answer_key.unwrap())).collect();
        assert_eq!(ids, [("q1", 'A'), ("q1_2", 'D')]);
    }

    #[test]
    fn descriptive_with_reference_answer() {
        let b = parse_raw("Q9. Write a short note on the Green Revolution in Punjab.\nAnswer: High-yield wheat, irrigation and fertilizer use from the late 1960s.\n");
        let q = &b.questions[0];
        assert!(q.options.is_empty());
        assert_eq!(q.answer_key, None);
        assert!(q.reference_answer.as_deref().unwrap().starts_with("High-yield"));
    }

    #[test]
    fn wrapped_stem_explanation_and_stats() {
        let b = parse_raw("Q4. A train covers 120 km\nin 2 hours. What is its speed?\n(A) 50 km/h\n(B) 60 km/h\n(C) 70 km/h\n(D) 80 km/h\nAnswer: B\nExplanation: Speed is distance\nover time.\nStats: 61/100\n");
        let q = &b.questions[0];
        assert_eq!(q.text, "A train covers 120 km in 2 hours. What is its speed?");
        assert_eq!(q.explanation.as_deref(), Some("Speed is distance over time."));
        assert_eq!(q.stats, Some(QuestionStats { attempts: 100, correct: 61 }));
    }

    #[test]
    fn missing_key_and_duplicate_options_are_skipped() {
        let b = parse_raw("Q1. a\n(A) x (B) y (C) z (D) w\n\nQ2. b\n(A) x (B) x (C) z (D) w\nAnswer: A\n");
        assert!(b.questions.is_empty());
        assert_eq!(b.warnings.len(), 2);
    }

    #[test]
    fn stem_starting_with_article_is_not_a_key_line() {
        let b = parse_raw("Q1. Intro\n(A) p (B) q (C) r (D) s\nAnswer: A\n2. A man walks 3 km north\n(A) 1 (B) 2 (C) 3 (D) 4\nAnswer: C\n");
        assert_eq!(b.questions.len(), 2, "{:?}", b.warnings);
        assert_eq!(b.questions[1].text, "A man walks 3 km north");
    }
}
