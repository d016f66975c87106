use serde::{Deserialize, Serialize};

use super::tokenize::tokenize_normalized;
use super::{IngestError, SourceDocument};
use crate::embedding::{EmbeddingProvider, EmbeddingVector};

pub const CHUNK_TOKENS: usize = 512;
pub const CHUNK_OVERLAP: usize = 50;
pub const CHUNK_STEP: usize = CHUNK_TOKENS - CHUNK_OVERLAP;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentChunk {
    /// `<doc_id>#<ordinal>`
    pub chunk_id: String,
    pub doc_id: String,
    pub ordinal: usize,
    /// Half-open `[start, end)` word-token offsets.
    pub token_span: (usize, usize),
    pub text: String,
    pub embedding: EmbeddingVector,
}

impl DocumentChunk {
    pub fn token_count(&self) -> usize {
        self.token_span.1 - self.token_span.0
    }
}

/// Window start offsets for a document of `n` tokens.
///
/// Full windows advance by [`CHUNK_STEP`] while they end strictly before `n`;
/// the last window is anchored at `max(0, n - CHUNK_TOKENS)` so it is
/// full-size whenever the document is.
pub fn window_starts(n: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let mut starts = Vec::new();
    let mut s = 0;
    while s + CHUNK_TOKENS < n {
        starts.push(s);
        s += CHUNK_STEP;
    }
    let last = n.saturating_sub(CHUNK_TOKENS);
    if starts.last() != Some(&last) {
        starts.push(last);
    }
    starts
}

pub fn chunk_document(
    doc: &SourceDocument,
    provider: &dyn EmbeddingProvider,
) -> Result<Vec<DocumentChunk>, IngestError> {
    let (normalized, tokens) = tokenize_normalized(&doc.text);
    if tokens.is_empty() {
        return Err(IngestError::EmptyDocument);
    }
    let n = tokens.len();
    window_starts(n)
        .into_iter()
        .enumerate()
        .map(|(ordinal, start)| {
            let end = (start + CHUNK_TOKENS).min(n);
            let text = normalized[tokens[start].start..tokens[end - 1].end].to_owned();
            let embedding = provider.embed(&text)?;
            Ok(DocumentChunk {
                chunk_id: format!("{}#{}", doc.doc_id, ordinal),
                doc_id: doc.doc_id.clone(),
                ordinal,
                token_span: (start, end),
                text,
                embedding,
            })
        })
        .collect()
}
