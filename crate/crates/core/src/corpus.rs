//! Chunk payloads plus the ANN index over their embeddings.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embedding::{fnv1a64, EmbeddingProvider, EmbeddingVector};
use crate::index::{HnswConfig, HnswIndex, IndexEntry, IndexError, SearchHit};
use crate::ingestion::{chunk_document, DocKind, DocumentChunk, IngestError, RecordStore, SourceDocument};

const INDEX_FILE: &str = "chunks.jsvi";
const CHUNKS_FILE: &str = "chunks.jsonl";

/// What a citation needs from a chunk; the embedding lives in the index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredChunk {
    pub chunk_id: String,
    pub doc_id: String,
    pub ordinal: usize,
    pub token_span: (usize, usize),
    pub text: String,
    pub kind: DocKind,
    pub origin: String,
}

#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    index: HnswIndex,
    chunks: HashMap<u64, StoredChunk>,
    by_doc: BTreeMap<String, Vec<u64>>,
}

/// Index id for a chunk id.
pub fn chunk_key(chunk_id: &str) -> u64 {
    fnv1a64(chunk_id.as_bytes())
}

impl KnowledgeBase {
    pub fn new(config: HnswConfig) -> Self {
        Self {
            index: HnswIndex::new(config),
            chunks: HashMap::new(),
            by_doc: BTreeMap::new(),
        }
    }

    pub fn index(&self) -> &HnswIndex {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    pub fn documents(&self) -> usize {
        self.by_doc.len()
    }

    pub fn chunk(&self, id: u64) -> Option<&StoredChunk> {
        self.chunks.get(&id)
    }

    pub fn chunks(&self) -> impl Iterator<Item = &StoredChunk> {
        self.chunks.values()
    }

    pub fn remove_document(&mut self, doc_id: &str) -> usize {
        let Some(ids) = self.by_doc.remove(doc_id) else {
            return 0;
        };
        for id in &ids {
            self.index.remove(*id);
            self.chunks.remove(id);
        }
        ids.len()
    }

    /// Swaps a document's chunks: old ones are tombstoned, new ones inserted.
    pub fn replace_document(
        &mut self,
        doc: &SourceDocument,
        chunks: Vec<DocumentChunk>,
    ) -> Result<(), IndexError> {
        self.remove_document(&doc.doc_id);
        let mut ids = Vec::with_capacity(chunks.len());
        for c in chunks {
            let id = chunk_key(&c.chunk_id);
            self.index
                .insert(IndexEntry::new(id, c.embedding, c.chunk_id.clone()))?;
            self.chunks.insert(
                id,
                StoredChunk {
                    chunk_id: c.chunk_id,
                    doc_id: c.doc_id,
                    ordinal: c.ordinal,
                    token_span: c.token_span,
                    text: c.text,
                    kind: doc.kind,
                    origin: doc.origin.clone(),
                },
            );
            ids.push(id);
        }
        self.by_doc.insert(doc.doc_id.clone(), ids);
        Ok(())
    }

    pub fn add_document(
        &mut self,
        doc: &SourceDocument,
        provider: &dyn EmbeddingProvider,
    ) -> Result<usize, IngestError> {
        let chunks = chunk_document(doc, provider)?;
        let n = chunks.len();
        self.replace_document(doc, chunks)?;
        Ok(n)
    }

    pub fn search(
        &self,
        query: &EmbeddingVector,
        k: usize,
    ) -> Result<Vec<(SearchHit, &StoredChunk)>, IndexError> {
        Ok(self
            .index
            .search(query, k)?
            .into_iter()
            .filter_map(|h| self.chunks.get(&h.id).map(|c| (h, c)))
            .collect())
    }

    /// Re-chunks the latest version of every record.
    pub fn rebuild_from_store(
        store: &RecordStore,
        provider: &dyn EmbeddingProvider,
        config: HnswConfig,
    ) -> Result<Self, IngestError> {
        let mut kb = Self::new(config);
        for doc in store.latest_documents() {
            kb.add_document(doc, provider)?;
        }
        Ok(kb)
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<(), IngestError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        self.index.save(dir.join(INDEX_FILE))?;
        let mut w = BufWriter::new(File::create(dir.join(CHUNKS_FILE))?);
        let mut ordered: Vec<&StoredChunk> = self.chunks.values().collect();
        ordered.sort_by(|a, b| (&a.doc_id, a.ordinal).cmp(&(&b.doc_id, b.ordinal)));
        for c in ordered {
            let line = serde_json::to_string(c).map_err(|e| IngestError::Storage(e.to_string()))?;
            w.write_all(line.as_bytes())?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn exists(dir: impl AsRef<Path>) -> bool {
        dir.as_ref().join(INDEX_FILE).exists()
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self, IngestError> {
        let dir = dir.as_ref();
        let index = HnswIndex::load(dir.join(INDEX_FILE))?;
        let mut chunks = HashMap::new();
        let mut by_doc: BTreeMap<String, Vec<u64>> = BTreeMap::new();
        for line in BufReader::new(File::open(dir.join(CHUNKS_FILE))?).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let c: StoredChunk =
                serde_json::from_str(&line).map_err(|e| IngestError::Storage(e.to_string()))?;
            let id = chunk_key(&c.chunk_id);
            if !index.contains(id) {
                return Err(IngestError::Storage(format!("chunk {} missing from index", c.chunk_id)));
            }
            by_doc.entry(c.doc_id.clone()).or_default().push(id);
            chunks.insert(id, c);
        }
        for ids in by_doc.values_mut() {
            ids.sort_by_key(|id| chunks[id].ordinal);
        }
        if chunks.len() != index.len() {
            return Err(IngestError::Storage("index and chunk file disagree".into()));
        }
        Ok(Self { index, chunks, by_doc })
    }
}
