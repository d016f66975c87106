#![allow(dead_code)]

pub mod diversify_oracle;
pub mod grounding;
pub mod resume_score;

use std::path::PathBuf;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}
