//! Versioned record store backed by an append-only JSON-lines log.
//!
//! Layout under the store directory:
//! - `records.log`: one [`VersionedRecord`] per line, appended on every write
//! - `snapshot.jsonl`: full state at the last checkpoint, same line format
//!
//! Opening replays the snapshot, then the log. Replay goes through the same
//! [`RecordStore::apply`] used by live writes, so a reopened store is
//! identical to the one that wrote it.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Duration, Utc};
use serde::{Deserialize, Serialize};

use super::{content_hash, IngestError, SourceDocument};

pub const RETENTION_DAYS: i64 = 90;
const BUCKET_SECS: i64 = 86_400;
const LOG_FILE: &str = "records.log";
const SNAPSHOT_FILE: &str = "snapshot.jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VersionedRecord {
    pub record_key: String,
    pub content_hash: String,
    pub version: u64,
    pub valid_from: DateTime<Utc>,
    pub payload: SourceDocument,
}

impl VersionedRecord {
    /// UTC-day bucket of `valid_from`.
    pub fn bucket(&self) -> i64 {
        self.valid_from.timestamp().div_euclid(BUCKET_SECS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpsertOutcome {
    Skipped,
    Created,
    /// Content changed. Within the latest version's 24-hour bucket the change
    /// overwrites that version instead of growing the history.
    NewVersion,
}

#[derive(Debug, Default)]
pub struct RecordStore {
    histories: BTreeMap<String, Vec<VersionedRecord>>,
    dir: Option<PathBuf>,
    log: Option<BufWriter<File>>,
}

impl RecordStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn open(dir: impl AsRef<Path>) -> Result<Self, IngestError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut store = Self {
            histories: BTreeMap::new(),
            dir: Some(dir.clone()),
            log: None,
        };
        for name in [SNAPSHOT_FILE, LOG_FILE] {
            let path = dir.join(name);
            if !path.exists() {
                continue;
            }
            for (n, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: VersionedRecord = serde_json::from_str(&line).map_err(|e| {
                    IngestError::Storage(format!("{}:{}: {e}", path.display(), n + 1))
                })?;
                store.apply(rec);
            }
        }
        store.log = Some(BufWriter::new(
            OpenOptions::new().create(true).append(true).open(dir.join(LOG_FILE))?,
        ));
        Ok(store)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn len(&self) -> usize {
        self.histories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.histories.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.histories.keys().map(String::as_str)
    }

    pub fn history(&self, key: &str) -> Option<&[VersionedRecord]> {
        self.histories.get(key).map(Vec::as_slice)
    }

    pub fn latest(&self, key: &str) -> Option<&VersionedRecord> {
        self.histories.get(key).and_then(|h| h.last())
    }

    pub fn latest_documents(&self) -> impl Iterator<Item = &SourceDocument> {
        self.histories.values().filter_map(|h| h.last()).map(|r| &r.payload)
    }

    /// Folds one record into the in-memory state. A record in the same UTC-day
    /// bucket as the key's latest version replaces it.
    fn apply(&mut self, rec: VersionedRecord) {
        let history = self.histories.entry(rec.record_key.clone()).or_default();
        match history.last_mut() {
            Some(last) if last.bucket() == rec.bucket() => *last = rec,
            _ => history.push(rec),
        }
    }

    fn append_log(&mut self, rec: &VersionedRecord) -> Result<(), IngestError> {
        if let Some(log) = self.log.as_mut() {
            let line = serde_json::to_string(rec).map_err(|e| IngestError::Storage(e.to_string()))?;
            log.write_all(line.as_bytes())?;
            log.write_all(b"\n")?;
            log.flush()?;
        }
        Ok(())
    }

    pub fn upsert(&mut self, doc: &SourceDocument, now: DateTime<Utc>) -> Result<UpsertOutcome, IngestError> {
        let hash = content_hash(doc);
        self.upsert_hashed(doc, hash, now)
    }

    pub(crate) fn upsert_hashed(
        &mut self,
        doc: &SourceDocument,
        hash: String,
        now: DateTime<Utc>,
    ) -> Result<UpsertOutcome, IngestError> {
        doc.validate()?;
        let (outcome, version) = match self.latest(&doc.doc_id) {
            Some(last) if last.content_hash == hash => return Ok(UpsertOutcome::Skipped),
            Some(last) => (UpsertOutcome::NewVersion, last.version + 1),
            None => (UpsertOutcome::Created, 1),
        };
        let rec = VersionedRecord {
            record_key: doc.doc_id.clone(),
            content_hash: hash,
            version,
            valid_from: now,
            payload: doc.clone(),
        };
        self.append_log(&rec)?;
        self.apply(rec);
        Ok(outcome)
    }

    /// Payload of the newest version with `valid_from <= as_of`.
    pub fn revert(
        &self,
        key: &str,
        as_of: DateTime<Utc>,
        now: DateTime<Utc>,
    ) -> Result<&SourceDocument, IngestError> {
        if as_of < now - Duration::days(RETENTION_DAYS) {
            return Err(IngestError::OutOfRetention { as_of });
        }
        let history = self
            .histories
            .get(key)
            .ok_or_else(|| IngestError::UnknownRecord(key.to_owned()))?;
        history
            .iter()
            .rev()
            .find(|r| r.valid_from <= as_of)
            .map(|r| &r.payload)
            .ok_or_else(|| IngestError::NotYetCreated {
                key: key.to_owned(),
                as_of,
            })
    }

    /// Drops versions that no `as_of` inside the retention window can select:
    /// those superseded before `now - 90 days`. The latest version is always
    /// kept. Returns the number of versions removed.
    pub fn prune(&mut self, now: DateTime<Utc>) -> usize {
        let horizon = now - Duration::days(RETENTION_DAYS);
        let mut removed = 0;
        for history in self.histories.values_mut() {
            let keep_from = history
                .windows(2)
                .position(|w| w[1].valid_from > horizon)
                .unwrap_or(history.len().saturating_sub(1));
            removed += keep_from;
            history.drain(..keep_from);
        }
        removed
    }

    /// Writes the full state to the snapshot file and truncates the log.
    pub fn checkpoint(&mut self) -> Result<(), IngestError> {
        let Some(dir) = self.dir.clone() else {
            return Ok(());
        };
        let tmp = dir.join(format!("{SNAPSHOT_FILE}.tmp"));
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            for rec in self.histories.values().flatten() {
                let line = serde_json::to_string(rec).map_err(|e| IngestError::Storage(e.to_string()))?;
                w.write_all(line.as_bytes())?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
            w.get_ref().sync_all()?;
        }
        fs::rename(&tmp, dir.join(SNAPSHOT_FILE))?;
        self.log = Some(BufWriter::new(File::create(dir.join(LOG_FILE))?));
        Ok(())
    }

    /// Every stored version, ordered by key then version.
    pub fn all_versions(&self) -> impl Iterator<Item = &VersionedRecord> {
        self.histories.values().flatten()
    }
}
