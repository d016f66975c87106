use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topic {
    Gk,
    Math,
    Reasoning,
    English,
    CurrentAffairs,
}

impl Topic {
    /// Also the tie-break order of the keyword classifier.
    pub const ALL: [Topic; 5] = [Topic::Gk, Topic::Math, Topic::Reasoning, Topic::English, Topic::CurrentAffairs];

    pub fn as_str(self) -> &'static str {
        match self {
            Topic::Gk => "gk",
            Topic::Math => "math",
            Topic::Reasoning => "reasoning",
            Topic::English => "english",
            Topic::CurrentAffairs => "current_affairs",
        }
    }
}

impl fmt::Display for Topic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s.trim().to_lowercase().replace([' ', '-'], "_");
        Topic::ALL
            .into_iter()
            .find(|t| t.as_str() == k)
            .or(match k.as_str() {
                "general_knowledge" | "general_awareness" => Some(Topic::Gk),
                "maths" | "mathematics" | "quant" | "quantitative_aptitude" => Some(Topic::Math),
                "current" | "currentaffairs" => Some(Topic::CurrentAffairs),
                _ => None,
            })
            .ok_or_else(|| format!("unknown topic '{s}'"))
    }
}

/// Assigns a topic to question text. A neural model would implement this.
pub trait TopicClassifier: Send + Sync {
    fn classify(&self, text: &str) -> Topic;
}

const KEYWORDS: &[(Topic, &[&str])] = &[
    (
        Topic::Gk,
        &[
            "capital", "river", "founded", "who wrote", "author", "largest", "longest", "highest", "national",
            "constitution", "article", "guru", "history", "battle", "dynasty", "invented", "discovered", "mountain",
            "temple", "known as", "located", "dance", "festival", "monument", "parliament", "amendment", "planet",
            "vitamin", "element", "instrument",
        ],
    ),
    (
        Topic::Math,
        &[
            "solve", "calculate", "find the value", "percent", "%", "ratio", "average", "profit", "loss",
            "interest", "sum of", "area", "volume", "speed", "km/h", "equation", "square root", "lcm", "hcf",
            "simplify", "perimeter", "product of", "multiplied", "divided", "+", "×", "÷", "=", "how many days",
            "how much", "cost",
        ],
    ),
    (
        Topic::Reasoning,
        &[
            "series", "next number", "next term", "odd one out", "analogy", "coded", "code language",
            "direction", "facing", "arrangement", "statement", "conclusion", "syllogism", "related to",
            "mirror image", "pattern", "sequence", "puzzle", "brother", "sister", "father", "mother",
            "north", "south", "east", "west", "missing", "is to",
        ],
    ),
    (
        Topic::English,
        &[
            "synonym", "antonym", "passage", "meaning", "spelling", "spelt", "grammar", "sentence", "idiom",
            "phrase", "fill in the blank", "voice", "narration", "preposition", "one word", "error", "plural",
            "tense", "article", "opposite", "word", "essay", "paragraph", "formal letter", "summarise",
            "precis", "correctly spelt",
        ],
    ),
    (
        Topic::CurrentAffairs,
        &[
            "recently", "latest", "current", "announced", "launched", "scheme", "summit", "appointed",
            "yojana", "mission", "hosted", "awarded", "g20", "budget", "olympics", "world cup", "chief minister",
            "prime minister", "governor", "policy",
        ],
    ),
];

#[derive(Debug, Clone, Copy, Default)]
pub struct KeywordTopicClassifier;

fn hits(lower: &str, kw: &str) -> bool {
    if !kw.chars().all(char::is_alphanumeric) && !kw.contains(' ') {
        return lower.contains(kw);
    }
    lower.match_indices(kw).any(|(i, _)| {
        let before = lower[..i].chars().next_back();
        let after = lower[i + kw.len()..].chars().next();
        !before.is_some_and(char::is_alphanumeric) && !after.is_some_and(char::is_alphanumeric)
    })
}

impl KeywordTopicClassifier {
    /// Keyword hit counts; math also gets 0.25 per number, capped at 0.75.
    pub fn scores(&self, text: &str) -> [(Topic, f64); 5] {
        let lower = text.to_lowercase();
        let numbers = lower
            .split(|c: char| !c.is_ascii_digit() && c != '.')
            .filter(|t| t.chars().any(|c| c.is_ascii_digit()))
            .count();
        Topic::ALL.map(|t| {
            let kws = KEYWORDS.iter().find(|(k, _)| *k == t).map(|(_, v)| *v).unwrap_or(&[]);
            let mut s = kws.iter().filter(|k| hits(&lower, k)).count() as f64;
            if t == Topic::Math {
                s += (numbers as f64 * 0.25).min(0.75);
            }
            (t, s)
        })
    }
}

impl TopicClassifier for KeywordTopicClassifier {
    /// Argmax; ties resolve in [`Topic::ALL`] order, so no hits means gk.
    fn classify(&self, text: &str) -> Topic {
        let mut best = (Topic::Gk, f64::NEG_INFINITY);
        for (t, s) in self.scores(text) {
            if s > best.1 {
                best = (t, s);
            }
        }
        best.0
    }
}

pub fn classify_topic(text: &str) -> Topic {
    KeywordTopicClassifier.classify(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(classify_topic("What is 15% of 200?"), Topic::Math);
        assert_eq!(classify_topic("Choose the synonym of 'abundant'"), Topic::English);
        assert_eq!(classify_topic("Which of these is correct?"), Topic::Gk);
        assert_eq!(classify_topic("Find the next number in the series 2, 4, 8, 16"), Topic::Reasoning);
        assert_eq!(classify_topic("Which scheme was launched to provide LPG connections?"), Topic::CurrentAffairs);
    }

    #[test]
    fn parse_names() {
        assert_eq!("Current Affairs".parse::<Topic>().unwrap(), Topic::CurrentAffairs);
        assert_eq!("maths".parse::<Topic>().unwrap(), Topic::Math);
        assert!("history".parse::<Topic>().is_err());
    }
}
