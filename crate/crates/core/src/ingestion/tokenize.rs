use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

/// A whitespace-delimited word. `start`/`end` are byte offsets into the
/// NFC-normalized text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

/// NFC-normalizes `text` and splits it on Unicode whitespace.
///
/// Returns the normalized text alongside the tokens so callers can slice it.
pub fn tokenize_normalized(text: &str) -> (String, Vec<Token>) {
    let normalized: String = text.nfc().collect();
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in normalized.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token {
                    text: normalized[s..i].to_owned(),
                    start: s,
                    end: i,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: normalized[s..].to_owned(),
            start: s,
            end: normalized.len(),
        });
    }
    (normalized, tokens)
}

pub fn tokenize(text: &str) -> Vec<Token> {
    tokenize_normalized(text).1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn splits_on_runs_of_whitespace() {
        assert_eq!(words("a b  c"), vec!["a", "b", "c"]);
    }

    #[test]
    fn empty_input_has_no_tokens() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" \n\t ").is_empty());
    }

    #[test]
    fn devanagari_sentence() {
        assert_eq!(tokenize("मुझे सरकारी नौकरी चाहिए अभी").len(), 5);
    }

    #[test]
    fn offsets_slice_back_to_token_text() {
        let (norm, toks) = tokenize_normalized("  ਪੰਜਾਬ jobs\u{3000}now ");
        for t in &toks {
            assert_eq!(&norm[t.start..t.end], t.text);
        }
        assert_eq!(toks.len(), 3);
    }
}
