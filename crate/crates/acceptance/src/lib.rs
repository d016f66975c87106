//! Acceptance suite lives in tests/acceptance; run `cargo test -p jobsphere-acceptance`.
