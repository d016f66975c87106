//! Hierarchical navigable small-world graph over unit vectors.
//!
//! Similarity is the dot product of already-normalized embeddings, so a
//! higher score is better everywhere in this module. Deletions are
//! tombstones: the node keeps routing traffic but never appears in results,
//! and the graph is rebuilt from live entries once tombstones exceed 20% of
//! all nodes.
//!
//! Graph construction draws node levels from a ChaCha8 generator seeded by
//! [`HnswConfig::seed`], so a given insertion sequence always produces the
//! same graph and the same search results.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::sync::Arc;

use parking_lot::RwLock;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{dot, EmbeddingVector, EMBEDDING_DIM};

const MAGIC: &[u8; 4] = b"JSVI";
const FORMAT_VERSION: u8 = 1;
const COMPACTION_RATIO: f64 = 0.20;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("duplicate id {0}")]
    DuplicateId(u64),
    #[error("dimension mismatch: index has {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt index file: {0}")]
    CorruptIndex(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnswConfig {
    pub m: usize,
    pub ef_construction: usize,
    pub ef_search: usize,
    pub seed: u64,
}

impl Default for HnswConfig {
    fn default() -> Self {
        Self {
            m: 16,
            ef_construction: 200,
            ef_search: 64,
            seed: 0x6a6f_6273,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndexEntry {
    pub id: u64,
    pub vector: EmbeddingVector,
    pub payload_ref: String,
}

impl IndexEntry {
    pub fn new(id: u64, vector: EmbeddingVector, payload_ref: impl Into<String>) -> Self {
        Self {
            id,
            vector,
            payload_ref: payload_ref.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    pub id: u64,
    pub score: f32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexStats {
    pub dimension: usize,
    pub nodes: usize,
    pub live: usize,
    pub tombstones: usize,
    pub max_level: usize,
    pub mean_layer0_degree: f64,
    pub config: HnswConfig,
}

#[derive(Debug, Clone)]
struct Node {
    id: u64,
    payload_ref: String,
    deleted: bool,
    /// `neighbors[l]` holds node offsets linked on layer `l`.
    neighbors: Vec<Vec<u32>>,
}

impl Node {
    fn level(&self) -> usize {
        self.neighbors.len() - 1
    }
}

#[derive(Debug, Clone, Copy)]
struct Cand {
    score: f32,
    node: u32,
}

impl PartialEq for Cand {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cand {}

impl PartialOrd for Cand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cand {
    // Greater = better: higher score, then lower node offset.
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct VisitedSet(Vec<u64>);

impl VisitedSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }

    /// Returns true if `i` was not yet visited.
    fn insert(&mut self, i: u32) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }
}

pub type SharedIndex = Arc<RwLock<HnswIndex>>;

#[derive(Debug, Clone)]
pub struct HnswIndex {
    config: HnswConfig,
    dimension: usize,
    nodes: Vec<Node>,
    vectors: Vec<f32>,
    id_map: HashMap<u64, u32>,
    entry_point: Option<u32>,
    max_level: usize,
    tombstones: usize,
    rng: ChaCha8Rng,
}

impl Default for HnswIndex {
    fn default() -> Self {
        Self::new(HnswConfig::default())
    }
}

impl HnswIndex {
    pub fn new(config: HnswConfig) -> Self {
        assert!(config.m >= 2, "HNSW needs m >= 2");
        Self {
            config,
            dimension: EMBEDDING_DIM,
            nodes: Vec::new(),
            vectors: Vec::new(),
            id_map: HashMap::new(),
            entry_point: None,
            max_level: 0,
            tombstones: 0,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
        }
    }

    pub fn into_shared(self) -> SharedIndex {
        Arc::new(RwLock::new(self))
    }

    pub fn config(&self) -> HnswConfig {
        self.config
    }

    pub fn set_ef_search(&mut self, ef: usize) {
        self.config.ef_search = ef.max(1);
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of live (searchable) entries.
    pub fn len(&self) -> usize {
        self.id_map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.id_map.is_empty()
    }

    pub fn contains(&self, id: u64) -> bool {
        self.id_map.contains_key(&id)
    }

    pub fn payload_ref(&self, id: u64) -> Option<&str> {
        self.id_map.get(&id).map(|&n| self.nodes[n as usize].payload_ref.as_str())
    }

    /// Live entries in insertion order.
    pub fn entries(&self) -> impl Iterator<Item = IndexEntry> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| !n.deleted).map(|(i, n)| IndexEntry {
            id: n.id,
            vector: EmbeddingVector::new(self.vector(i as u32).to_vec()).expect("stored dimension"),
            payload_ref: n.payload_ref.clone(),
        })
    }

    pub fn stats(&self) -> IndexStats {
        let live_degrees: Vec<usize> = self
            .nodes
            .iter()
            .filter(|n| !n.deleted)
            .map(|n| n.neighbors[0].len())
            .collect();
        let mean = if live_degrees.is_empty() {
            0.0
        } else {
            live_degrees.iter().sum::<usize>() as f64 / live_degrees.len() as f64
        };
        IndexStats {
            dimension: self.dimension,
            nodes: self.nodes.len(),
            live: self.len(),
            tombstones: self.tombstones,
            max_level: self.max_level,
            mean_layer0_degree: mean,
            config: self.config,
        }
    }

    #[inline]
    fn vector(&self, node: u32) -> &[f32] {
        let start = node as usize * self.dimension;
        &self.vectors[start..start + self.dimension]
    }

    #[inline]
    fn sim(&self, query: &[f32], node: u32) -> f32 {
        dot(query, self.vector(node))
    }

    fn check_dim(&self, v: &EmbeddingVector) -> Result<(), IndexError> {
        if v.dimension() != self.dimension {
            return Err(IndexError::DimensionMismatch {
                expected: self.dimension,
                actual: v.dimension(),
            });
        }
        Ok(())
    }

    fn random_level(&mut self) -> usize {
        let mult = 1.0 / (self.config.m as f64).ln();
        let u: f64 = self.rng.random();
        // u in [0,1); 1-u in (0,1] keeps ln finite.
        ((-(1.0 - u).ln()) * mult).floor() as usize
    }

    fn max_links(&self, level: usize) -> usize {
        if level == 0 {
            self.config.m * 2
        } else {
            self.config.m
        }
    }

    pub fn insert(&mut self, entry: IndexEntry) -> Result<(), IndexError> {
        self.check_dim(&entry.vector)?;
        if self.id_map.contains_key(&entry.id) {
            return Err(IndexError::DuplicateId(entry.id));
        }
        let level = self.random_level();
        let node = self.nodes.len() as u32;
        self.vectors.extend_from_slice(entry.vector.as_slice());
        self.nodes.push(Node {
            id: entry.id,
            payload_ref: entry.payload_ref,
            deleted: false,
            neighbors: vec![Vec::new(); level + 1],
        });
        self.id_map.insert(entry.id, node);

        let Some(mut ep) = self.entry_point else {
            self.entry_point = Some(node);
            self.max_level = level;
            return Ok(());
        };

        let query = self.vector(node).to_vec();
        for l in (level + 1..=self.max_level).rev() {
            ep = self.greedy_closest(&query, ep, l);
        }
        let mut eps = vec![ep];
        for l in (0..=level.min(self.max_level)).rev() {
            let found = self.search_layer(&query, &eps, self.config.ef_construction, l);
            let selected = self.select_neighbors(&found, self.config.m);
            self.nodes[node as usize].neighbors[l] = selected.clone();
            for &nb in &selected {
                self.link(nb, node, l);
            }
            eps = found.iter().map(|c| c.node).collect();
        }
        if level > self.max_level {
            self.max_level = level;
            self.entry_point = Some(node);
        }
        Ok(())
    }

    /// Adds `to` to `from`'s layer-`l` links, pruning with the heuristic when
    /// the cap is exceeded.
    fn link(&mut self, from: u32, to: u32, l: usize) {
        let cap = self.max_links(l);
        let links = &mut self.nodes[from as usize].neighbors[l];
        if links.contains(&to) {
            return;
        }
        links.push(to);
        if links.len() <= cap {
            return;
        }
        let base = self.vector(from).to_vec();
        let mut cands: Vec<Cand> = self.nodes[from as usize].neighbors[l]
            .iter()
            .map(|&n| Cand {
                score: self.sim(&base, n),
                node: n,
            })
            .collect();
        cands.sort_by(|a, b| b.cmp(a));
        let kept = self.select_neighbors(&cands, cap);
        self.nodes[from as usize].neighbors[l] = kept;
    }

    /// Diversity heuristic: keep a candidate only if it is closer to the base
    /// than to every neighbor already kept. `cands` must be sorted best-first.
    fn select_neighbors(&self, cands: &[Cand], m: usize) -> Vec<u32> {
        let mut kept: Vec<u32> = Vec::with_capacity(m);
        for c in cands {
            if kept.len() >= m {
                break;
            }
            let v = self.vector(c.node);
            let dominated = kept.iter().any(|&k| dot(v, self.vector(k)) > c.score);
            if !dominated {
                kept.push(c.node);
            }
        }
        kept
    }

    fn greedy_closest(&self, query: &[f32], start: u32, level: usize) -> u32 {
        let mut best = Cand {
            score: self.sim(query, start),
            node: start,
        };
        loop {
            let mut improved = false;
            for &nb in &self.nodes[best.node as usize].neighbors[level] {
                let c = Cand {
                    score: self.sim(query, nb),
                    node: nb,
                };
                if c > best {
                    best = c;
                    improved = true;
                }
            }
            if !improved {
                return best.node;
            }
        }
    }

    /// Beam search on one layer; returns up to `ef` candidates, best first.
    fn search_layer(&self, query: &[f32], eps: &[u32], ef: usize, level: usize) -> Vec<Cand> {
        let mut visited = VisitedSet::new(self.nodes.len());
        let mut frontier: BinaryHeap<Cand> = BinaryHeap::new();
        let mut best: BinaryHeap<Reverse<Cand>> = BinaryHeap::new();
        for &ep in eps {
            if visited.insert(ep) {
                let c = Cand {
                    score: self.sim(query, ep),
                    node: ep,
                };
                frontier.push(c);
                best.push(Reverse(c));
                if best.len() > ef {
                    best.pop();
                }
            }
        }
        while let Some(c) = frontier.pop() {
            let worst = best.peek().map(|r| r.0);
            if let Some(w) = worst {
                if best.len() >= ef && c < w {
                    break;
                }
            }
            for &nb in &self.nodes[c.node as usize].neighbors[level] {
                if !visited.insert(nb) {
                    continue;
                }
                let cand = Cand {
                    score: self.sim(query, nb),
                    node: nb,
                };
                let admit = best.len() < ef || best.peek().is_some_and(|w| cand > w.0);
                if admit {
                    frontier.push(cand);
                    best.push(Reverse(cand));
                    if best.len() > ef {
                        best.pop();
                    }
                }
            }
        }
        let mut out: Vec<Cand> = best.into_iter().map(|r| r.0).collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Tombstones `id`. Returns whether it was present.
    pub fn remove(&mut self, id: u64) -> bool {
        let Some(node) = self.id_map.remove(&id) else {
            return false;
        };
        self.nodes[node as usize].deleted = true;
        self.tombstones += 1;
        if self.tombstones as f64 > COMPACTION_RATIO * self.nodes.len() as f64 {
            self.compact();
        }
        true
    }

    /// Rebuilds the graph from live entries in their original insertion order.
    pub fn compact(&mut self) {
        let live: Vec<IndexEntry> = self.entries().collect();
        let mut fresh = HnswIndex::new(self.config);
        for e in live {
            fresh.insert(e).expect("live ids are unique");
        }
        *self = fresh;
    }

    fn sort_hits(hits: &mut [SearchHit]) {
        hits.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.id.cmp(&b.id)));
    }

    /// Approximate top-`k` by cosine. Exact whenever the live entry count is
    /// at most `ef_search`.
    pub fn search(&self, query: &EmbeddingVector, k: usize) -> Result<Vec<SearchHit>, IndexError> {
        self.search_with_ef(query, k, self.config.ef_search)
    }

    pub fn search_with_ef(
        &self,
        query: &EmbeddingVector,
        k: usize,
        ef: usize,
    ) -> Result<Vec<SearchHit>, IndexError> {
        self.check_dim(query)?;
        if k == 0 || self.is_empty() {
            return Ok(Vec::new());
        }
        if self.len() <= ef {
            return self.brute_force_search(query, k);
        }
        Ok(self.graph_search(query.as_slice(), k, ef))
    }

    fn graph_search(&self, query: &[f32], k: usize, ef: usize) -> Vec<SearchHit> {
        let Some(mut ep) = self.entry_point else {
            return Vec::new();
        };
        for l in (1..=self.max_level).rev() {
            ep = self.greedy_closest(query, ep, l);
        }
        let found = self.search_layer(query, &[ep], ef.max(k), 0);
        let mut hits: Vec<SearchHit> = found
            .into_iter()
            .filter(|c| !self.nodes[c.node as usize].deleted)
            .map(|c| SearchHit {
                id: self.nodes[c.node as usize].id,
                score: c.score,
            })
            .collect();
        Self::sort_hits(&mut hits);
        hits.truncate(k);
        hits
    }

    /// Exact linear scan with the same scoring and tie-break as [`search`](Self::search).
    pub fn brute_force_search(
        &self,
        query: &EmbeddingVector,
        k: usize,
    ) -> Result<Vec<SearchHit>, IndexError> {
        self.check_dim(query)?;
        let q = query.as_slice();
        let mut hits: Vec<SearchHit> = self
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.deleted)
            .map(|(i, n)| SearchHit {
                id: n.id,
                score: self.sim(q, i as u32),
            })
            .collect();
        Self::sort_hits(&mut hits);
        hits.truncate(k);
        Ok(hits)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), IndexError> {
        let bytes = self.to_bytes();
        let mut f = fs::File::create(path)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IndexError> {
        let mut buf = Vec::new();
        fs::File::open(path)?.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }

    /// Layout: magic, version byte, dimension (u32 LE), node count (u64 LE),
    /// config and graph header, nodes, then CRC32 of everything before it.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.vectors.len() * 4 + self.nodes.len() * 160 + 64);
        out.extend_from_slice(MAGIC);
        out.push(FORMAT_VERSION);
        out.extend_from_slice(&(self.dimension as u32).to_le_bytes());
        out.extend_from_slice(&(self.nodes.len() as u64).to_le_bytes());
        out.extend_from_slice(&(self.config.m as u32).to_le_bytes());
        out.extend_from_slice(&(self.config.ef_construction as u32).to_le_bytes());
        out.extend_from_slice(&(self.config.ef_search as u32).to_le_bytes());
        out.extend_from_slice(&self.config.seed.to_le_bytes());
        out.extend_from_slice(&self.rng.get_word_pos().to_le_bytes());
        out.extend_from_slice(&self.entry_point.unwrap_or(u32::MAX).to_le_bytes());
        out.extend_from_slice(&(self.max_level as u32).to_le_bytes());
        for (i, n) in self.nodes.iter().enumerate() {
            out.extend_from_slice(&n.id.to_le_bytes());
            out.push(n.deleted as u8);
            out.push(n.level() as u8);
            out.extend_from_slice(&(n.payload_ref.len() as u32).to_le_bytes());
            out.extend_from_slice(n.payload_ref.as_bytes());
            for v in self.vector(i as u32) {
                out.extend_from_slice(&v.to_le_bytes());
            }
            for links in &n.neighbors {
                out.extend_from_slice(&(links.len() as u32).to_le_bytes());
                for l in links {
                    out.extend_from_slice(&l.to_le_bytes());
                }
            }
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self, IndexError> {
        let corrupt = |m: &str| IndexError::CorruptIndex(m.to_owned());
        if buf.len() < 4 || &buf[..4] != MAGIC {
            return Err(corrupt("bad magic bytes"));
        }
        if buf.len() < 9 {
            return Err(corrupt("truncated header"));
        }
        let (body, tail) = buf.split_at(buf.len() - 4);
        let stored = u32::from_le_bytes(tail.try_into().expect("4 bytes"));
        if crc32fast::hash(body) != stored {
            return Err(corrupt("checksum mismatch"));
        }
        let mut r = ByteReader { buf: body, pos: 4 };
        let version = r.u8()?;
        if version != FORMAT_VERSION {
            return Err(IndexError::CorruptIndex(format!("unsupported version {version}")));
        }
        let dimension = r.u32()? as usize;
        if dimension != EMBEDDING_DIM {
            return Err(IndexError::DimensionMismatch {
                expected: EMBEDDING_DIM,
                actual: dimension,
            });
        }
        let count = r.u64()? as usize;
        let config = HnswConfig {
            m: r.u32()? as usize,
            ef_construction: r.u32()? as usize,
            ef_search: r.u32()? as usize,
            seed: r.u64()?,
        };
        if config.m < 2 {
            return Err(corrupt("invalid m"));
        }
        let word_pos = r.u128()?;
        let entry = r.u32()?;
        let max_level = r.u32()? as usize;

        let mut index = HnswIndex::new(config);
        index.rng.set_word_pos(word_pos);
        index.max_level = max_level;
        index.entry_point = (entry != u32::MAX).then_some(entry);
        for i in 0..count {
            let id = r.u64()?;
            let deleted = r.u8()? != 0;
            let level = r.u8()? as usize;
            let plen = r.u32()? as usize;
            let payload_ref = String::from_utf8(r.bytes(plen)?.to_vec())
                .map_err(|_| corrupt("payload is not utf-8"))?;
            for _ in 0..dimension {
                index.vectors.push(r.f32()?);
            }
            let mut neighbors = Vec::with_capacity(level + 1);
            for _ in 0..=level {
                let n = r.u32()? as usize;
                let mut links = Vec::with_capacity(n);
                for _ in 0..n {
                    let l = r.u32()?;
                    if l as usize >= count {
                        return Err(corrupt("link out of range"));
                    }
                    links.push(l);
                }
                neighbors.push(links);
            }
            if deleted {
                index.tombstones += 1;
            } else if index.id_map.insert(id, i as u32).is_some() {
                return Err(IndexError::DuplicateId(id));
            }
            index.nodes.push(Node {
                id,
                payload_ref,
                deleted,
                neighbors,
            });
        }
        if r.pos != body.len() {
            return Err(corrupt("trailing bytes"));
        }
        if let Some(e) = index.entry_point {
            if e as usize >= count || index.nodes[e as usize].level() != max_level {
                return Err(corrupt("bad entry point"));
            }
        }
        Ok(index)
    }
}

struct ByteReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    fn bytes(&mut self, n: usize) -> Result<&'a [u8], IndexError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| IndexError::CorruptIndex("truncated".into()))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, IndexError> {
        Ok(self.bytes(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, IndexError> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, IndexError> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().unwrap()))
    }

    fn u128(&mut self) -> Result<u128, IndexError> {
        Ok(u128::from_le_bytes(self.bytes(16)?.try_into().unwrap()))
    }

    fn f32(&mut self) -> Result<f32, IndexError> {
        Ok(f32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }
}
