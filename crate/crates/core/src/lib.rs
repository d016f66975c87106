//! Career-copilot engine.
//!
//! Modules, bottom-up:
//! - [`embedding`]: deterministic text encoders and cosine math
//! - [`index`]: HNSW approximate nearest-neighbor index
//! - [`ingestion`]: chunking, hashing, versioned store, scheduler, pipeline
//! - [`corpus`]: chunk payloads plus their index
//! - [`retrieval`]: language detection, translation contract, grounded answers, TTL cache
//! - [`recommender`]: multi-stage job recommendation
//! - [`resume`]: resume segmentation, entity extraction, skill normalization
//! - [`mocktest`]: question-bank parsing, test assembly, grading
//! - [`fixtures`]: bundled knowledge corpus and question bank
//! - [`synth`]: seeded synthetic corpora for tests, benchmarks and the demo

pub mod clock;
pub mod corpus;
pub mod embedding;
pub mod fixtures;
pub mod index;
pub mod ingestion;
pub mod retrieval;
pub mod recommender;
pub mod resume;
pub mod synth;
pub mod mocktest;
