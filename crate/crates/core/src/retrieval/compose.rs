use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus::StoredChunk;
use crate::embedding::{cosine, EmbeddingProvider};
use crate::index::SearchHit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Citation {
    pub chunk_id: String,
    pub doc_id: String,
    pub score: f32,
    /// Verbatim sentence of the chunk that backs the answer.
    pub quoted_span: String,
    #[serde(default)]
    pub origin: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Composed {
    pub text: String,
    pub citations: Vec<Citation>,
}

/// Turns retrieved chunks into answer text. An LLM plugin would implement
/// this; the built-in one only copies sentences.
pub trait AnswerComposer: Send + Sync {
    fn compose(&self, query: &str, hits: &[(SearchHit, &StoredChunk)]) -> Composed;
}

pub const NO_ANSWER_TEXT: &str =
    "No grounded answer was found in the indexed sources for this question.";

pub fn lead_sentence(n_sources: usize) -> String {
    if n_sources == 1 {
        "According to 1 indexed source:".to_string()
    } else {
        format!("According to {n_sources} indexed sources:")
    }
}

/// Sentence split on terminal punctuation followed by whitespace, and on
/// line breaks. Returned slices are verbatim pieces of `text`.
pub fn split_sentences(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut prev_terminal = false;
    for (i, c) in text.char_indices() {
        let boundary = c == '\n' || (prev_terminal && c.is_whitespace());
        if boundary {
            let s = text[start..i].trim();
            if !s.is_empty() {
                out.push(s);
            }
            start = i + c.len_utf8();
        }
        prev_terminal = matches!(c, '.' | '?' | '!' | '।' | '॥');
    }
    let s = text[start..].trim();
    if !s.is_empty() {
        out.push(s);
    }
    out
}

pub struct ExtractiveComposer {
    provider: Arc<dyn EmbeddingProvider>,
}

impl ExtractiveComposer {
    pub fn new(provider: Arc<dyn EmbeddingProvider>) -> Self {
        Self { provider }
    }

    fn best_sentence<'a>(&self, query: &str, text: &'a str) -> Option<&'a str> {
        let q = self.provider.embed(query).ok();
        let mut best: Option<(f64, &str)> = None;
        for s in split_sentences(text) {
            let score = match (&q, self.provider.embed(s)) {
                (Some(q), Ok(v)) => cosine(q, &v).unwrap_or(0.0),
                _ => 0.0,
            };
            if best.is_none_or(|(b, _)| score > b) {
                best = Some((score, s));
            }
        }
        best.map(|(_, s)| s)
    }
}

impl AnswerComposer for ExtractiveComposer {
    fn compose(&self, query: &str, hits: &[(SearchHit, &StoredChunk)]) -> Composed {
        let mut ranked: Vec<&(SearchHit, &StoredChunk)> = hits.iter().collect();
        ranked.sort_by(|a, b| b.0.score.total_cmp(&a.0.score).then(a.0.id.cmp(&b.0.id)));
        let mut citations: Vec<Citation> = Vec::new();
        for (hit, chunk) in ranked {
            let Some(span) = self.best_sentence(query, &chunk.text) else {
                continue;
            };
            if citations.iter().any(|c| c.quoted_span == span) {
                continue;
            }
            citations.push(Citation {
                chunk_id: chunk.chunk_id.clone(),
                doc_id: chunk.doc_id.clone(),
                score: hit.score,
                quoted_span: span.to_string(),
                origin: chunk.origin.clone(),
            });
        }
        if citations.is_empty() {
            return Composed {
                text: NO_ANSWER_TEXT.to_string(),
                citations,
            };
        }
        let mut text = lead_sentence(citations.len());
        for c in &citations {
            text.push('\n');
            text.push_str(&c.quoted_span);
        }
        Composed { text, citations }
    }
}

/// Lines of `text` that are neither the lead template nor a verbatim
/// substring of a cited chunk.
pub fn ungrounded_lines<'a>(text: &'a str, citations: &[Citation], chunk_text: impl Fn(&str) -> Option<String>) -> Vec<&'a str> {
    let sources: Vec<String> = citations.iter().filter_map(|c| chunk_text(&c.chunk_id)).collect();
    let lead = lead_sentence(citations.len());
    text.lines()
        .enumerate()
        .filter(|(i, line)| {
            if *i == 0 && *line == lead {
                return false;
            }
            !sources.iter().any(|s| s.contains(line))
        })
        .map(|(_, l)| l)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::HashingEmbedder;
    use crate::ingestion::DocKind;

    fn chunk(id: &str, text: &str) -> StoredChunk {
        StoredChunk {
            chunk_id: format!("{id}#0"),
            doc_id: id.into(),
            ordinal: 0,
            token_span: (0, 1),
            text: text.into(),
            kind: DocKind::Alert,
            origin: String::new(),
        }
    }

    #[test]
    fn sentences_are_verbatim_slices() {
        let t = "Apply online. Last date is 30 June!\nFee: Rs 100 । दूसरा वाक्य।";
        let s = split_sentences(t);
        assert_eq!(s, vec!["Apply online.", "Last date is 30 June!", "Fee: Rs 100 ।", "दूसरा वाक्य।"]);
        assert!(s.iter().all(|x| t.contains(x)));
    }

    #[test]
    fn decimals_do_not_split() {
        assert_eq!(split_sentences("Pay 2.5 lakh. Done"), vec!["Pay 2.5 lakh.", "Done"]);
    }

    #[test]
    fn picks_the_sentence_closest_to_the_query() {
        let c = ExtractiveComposer::new(Arc::new(HashingEmbedder::new()));
        let a = chunk("a", "The exam is held in Mohali. Apply before 30 June. Fees are waived.");
        let hits = vec![(SearchHit { id: 1, score: 0.8 }, &a)];
        let out = c.compose("apply before what date", &hits);
        assert_eq!(out.citations.len(), 1);
        assert_eq!(out.citations[0].quoted_span, "Apply before 30 June.");
        assert_eq!(out.text, "According to 1 indexed source:\nApply before 30 June.");
    }

    #[test]
    fn citations_follow_score_order() {
        let c = ExtractiveComposer::new(Arc::new(HashingEmbedder::new()));
        let a = chunk("a", "Alpha text.");
        let b = chunk("b", "Beta text.");
        let hits = vec![(SearchHit { id: 1, score: 0.3 }, &a), (SearchHit { id: 2, score: 0.9 }, &b)];
        let out = c.compose("text", &hits);
        let ids: Vec<_> = out.citations.iter().map(|c| c.doc_id.as_str()).collect();
        assert_eq!(ids, ["b", "a"]);
    }

    #[test]
    fn checker_flags_invented_lines() {
        let cits = vec![Citation {
            chunk_id: "a#0".into(),
            doc_id: "a".into(),
            score: 1.0,
            quoted_span: "x".into(),
            origin: String::new(),
        }];
        let lookup = |_: &str| Some("Apply before 30 June.".to_string());
        assert!(ungrounded_lines("According to 1 indexed source:\nApply before 30 June.", &cits, lookup).is_empty());
        assert_eq!(
            ungrounded_lines("According to 1 indexed source:\nApply by July.", &cits, lookup),
            vec!["Apply by July."]
        );
    }
}
