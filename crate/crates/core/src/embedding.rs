//! Text-to-vector contract and the vector math used by every downstream
//! module.
//!
//! The default provider is a signed feature-hashing embedder: word unigrams
//! and padded character trigrams are hashed with FNV-1a 64 into
//! [`EMBEDDING_DIM`] buckets, the top hash bit picks the sign, and the
//! accumulated counts are L2-normalized. It is deterministic across runs and
//! platforms, so every fixture in the test suites is reproducible without
//! model weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

pub const EMBEDDING_DIM: usize = 384;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("text is empty or whitespace-only")]
    EmptyText,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// A 384-dimensional vector that is either all-zero or unit length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f32>", into = "Vec<f32>")]
pub struct EmbeddingVector(Vec<f32>);

impl EmbeddingVector {
    /// L2-normalizes `values`. An all-zero input stays all-zero.
    pub fn new(values: Vec<f32>) -> Result<Self, EmbeddingError> {
        if values.len() != EMBEDDING_DIM {
            return Err(EmbeddingError::DimensionMismatch {
                expected: EMBEDDING_DIM,
                actual: values.len(),
            });
        }
        let acc: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        Ok(Self(normalize(&acc)))
    }

    pub fn zeros() -> Self {
        Self(vec![0.0; EMBEDDING_DIM])
    }

    /// Unit vector along axis `i`.
    pub fn basis(i: usize) -> Self {
        let mut v = vec![0.0; EMBEDDING_DIM];
        v[i % EMBEDDING_DIM] = 1.0;
        Self(v)
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|&v| (v as f64) * (v as f64)).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }
}

impl TryFrom<Vec<f32>> for EmbeddingVector {
    type Error = EmbeddingError;

    fn try_from(values: Vec<f32>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<EmbeddingVector> for Vec<f32> {
    fn from(v: EmbeddingVector) -> Self {
        v.0
    }
}

fn normalize(acc: &[f64]) -> Vec<f32> {
    let norm = acc.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return vec![0.0; acc.len()];
    }
    acc.iter().map(|v| (v / norm) as f32).collect()
}

/// Cosine similarity; 0 when either side is all-zero.
pub fn cosine(u: &EmbeddingVector, v: &EmbeddingVector) -> Result<f64, EmbeddingError> {
    cosine_slices(u.as_slice(), v.as_slice())
}

pub fn cosine_slices(u: &[f32], v: &[f32]) -> Result<f64, EmbeddingError> {
    if u.len() != v.len() {
        return Err(EmbeddingError::DimensionMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    let (mut dot, mut nu, mut nv) = (0.0f64, 0.0f64, 0.0f64);
    for (&a, &b) in u.iter().zip(v) {
        let (a, b) = (a as f64, b as f64);
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0))
}

/// Dot product in f32; the index uses this on unit vectors.
#[inline]
pub fn dot(u: &[f32], v: &[f32]) -> f32 {
    // Eight independent accumulators let the compiler vectorize the loop.
    let mut acc = [0.0f32; 8];
    let chunks = u.len() / 8;
    for c in 0..chunks {
        let a = &u[c * 8..c * 8 + 8];
        let b = &v[c * 8..c * 8 + 8];
        for i in 0..8 {
            acc[i] += a[i] * b[i];
        }
    }
    let mut sum = acc.iter().sum::<f32>();
    for i in chunks * 8..u.len() {
        sum += u[i] * v[i];
    }
    sum
}

/// Deterministic text encoder.
pub trait EmbeddingProvider: Send + Sync {
    fn name(&self) -> &str;

    fn dimension(&self) -> usize;

    fn embed(&self, text: &str) -> Result<EmbeddingVector, EmbeddingError>;
}

pub const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
pub const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

fn is_separator(c: char) -> bool {
    c.is_whitespace()
        || (c.is_ascii() && !c.is_ascii_alphanumeric())
        || ('\u{2000}'..='\u{206F}').contains(&c)
        || c == '\u{0964}'
        || c == '\u{0965}'
}

/// NFC-normalized, lowercased word units. Indic combining signs stay attached
/// to their base letters.
pub fn feature_words(text: &str) -> Vec<String> {
    let normalized: String = text.nfc().collect::<String>().to_lowercase();
    let words: Vec<String> = normalized
        .split(is_separator)
        .filter(|w| !w.is_empty())
        .map(str::to_owned)
        .collect();
    if words.is_empty() {
        let squashed: String = normalized.chars().filter(|c| !c.is_whitespace()).collect();
        if squashed.is_empty() {
            return Vec::new();
        }
        return vec![squashed];
    }
    words
}

/// Hashed features: `w:<word>` plus `c:<trigram>` over `<word>` with angle
/// bracket padding.
pub fn hashed_features(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in feature_words(text) {
        let padded: Vec<char> = std::iter::once('<')
            .chain(word.chars())
            .chain(std::iter::once('>'))
            .collect();
        out.push(format!("w:{word}"));
        for tri in padded.windows(3) {
            let mut f = String::from("c:");
            f.extend(tri);
            out.push(f);
        }
    }
    out
}

/// Signed feature-hashing embedder (FNV-1a 64, 384 buckets).
#[derive(Debug, Default, Clone, Copy)]
pub struct HashingEmbedder;

impl HashingEmbedder {
    pub fn new() -> Self {
        Self
    }

    fn accumulate(features: &[String], signed: bool) -> Vec<f64> {
        let mut acc = vec![0.0f64; EMBEDDING_DIM];
        for f in features {
            let h = fnv1a64(f.as_bytes());
            let sign = if signed && (h >> 63) & 1 == 1 { -1.0 } else { 1.0 };
            acc[(h % EMBEDDING_DIM as u64) as usize] += sign;
        }
        acc
    }
}

impl EmbeddingProvider for HashingEmbedder {
    fn name(&self) -> &str {
        "hashing-fnv1a-384"
    }

    fn dimension(&self) -> usize {
        EMBEDDING_DIM
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, EmbeddingError> {
        if text.trim().is_empty() {
            return Err(EmbeddingError::EmptyText);
        }
        let features = hashed_features(text);
        let mut acc = Self::accumulate(&features, true);
        // Signed counts can cancel exactly on tiny inputs.
        if acc.iter().all(|&v| v == 0.0) {
            acc = Self::accumulate(&features, false);
        }
        Ok(EmbeddingVector(normalize(&acc)))
    }
}

/// Random projection of word unigrams: each word maps to a Gaussian-ish
/// vector drawn from a generator seeded by `seed ^ fnv1a64(word)`.
///
/// Used to check that downstream modules only rely on the provider
/// contract, not on the hashing scheme.
#[derive(Debug, Clone, Copy)]
pub struct SeededRandomEmbedder {
    seed: u64,
}

impl SeededRandomEmbedder {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }
}

impl EmbeddingProvider for SeededRandomEmbedder {
    fn name(&self) -> &str {
        "seeded-random-projection"
    }

    fn dimension(&self) -> usize {
        EMBEDDING_DIM
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, EmbeddingError> {
        if text.trim().is_empty() {
            return Err(EmbeddingError::EmptyText);
        }
        let mut acc = vec![0.0f64; EMBEDDING_DIM];
        for word in feature_words(text) {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a64(word.as_bytes()));
            for slot in acc.iter_mut() {
                // Sum of two uniforms: cheap, symmetric, nonzero almost surely.
                *slot += rng.random::<f64>() + rng.random::<f64>() - 1.0;
            }
        }
        Ok(EmbeddingVector(normalize(&acc)))
    }
}

/// Convenience wrapper used across modules.
pub fn embed_text(provider: &dyn EmbeddingProvider, text: &str) -> Result<EmbeddingVector, EmbeddingError> {
    provider.embed(text)
}
