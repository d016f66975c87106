//! Durable service state: two append-only JSON-lines logs replayed at start.
//!
//! `accounts.jsonl` holds identity and profile events, `activity.jsonl` chat
//! turns and tests, `revoked.jsonl` logged-out token ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use jobsphere_core::mocktest::{GradeReport, MockTest};
use jobsphere_core::recommender::CandidateProfile;
use jobsphere_core::retrieval::GroundedAnswer;

const ACCOUNTS: &str = "accounts.jsonl";
const ACTIVITY: &str = "activity.jsonl";
const REVOKED: &str = "revoked.jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatTurn {
    pub at: DateTime<Utc>,
    pub question: String,
    pub answer: GroundedAnswer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestRecord {
    pub test: MockTest,
    pub generated_at: DateTime<Utc>,
    pub report: Option<GradeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct User {
    pub user_id: String,
    pub password_hash: String,
    pub created_at: DateTime<Utc>,
    pub profile: Option<CandidateProfile>,
    /// Resume skills waiting for a profile to land in.
    pub pending_skills: BTreeSet<String>,
    pub chat: Vec<ChatTurn>,
    pub tests: Vec<TestRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Registered {
        user_id: String,
        password_hash: String,
        at: DateTime<Utc>,
    },
    ProfileSet {
        user_id: String,
        profile: CandidateProfile,
    },
    SkillsMerged {
        user_id: String,
        skills: BTreeSet<String>,
    },
    Chat {
        user_id: String,
        turn: ChatTurn,
    },
    ChatCleared {
        user_id: String,
    },
    TestGenerated {
        user_id: String,
        record: TestRecord,
    },
    TestGraded {
        user_id: String,
        report: GradeReport,
    },
}

impl Event {
    fn log(&self) -> &'static str {
        match self {
            Event::Registered { .. } | Event::ProfileSet { .. } | Event::SkillsMerged { .. } => ACCOUNTS,
            _ => ACTIVITY,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Revocation {
    jti: String,
    exp: i64,
}

#[derive(Debug, Default)]
pub struct Db {
    pub users: BTreeMap<String, User>,
    dir: Option<PathBuf>,
}

fn read_lines<T: for<'de> Deserialize<'de>>(path: &Path) -> io::Result<Vec<T>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (n, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(v) => out.push(v),
            // A torn final write is dropped; anything else is corruption.
            Err(e) if e.is_eof() => tracing::warn!("{}:{}: truncated record skipped", path.display(), n + 1),
            Err(e) => return Err(io::Error::new(io::ErrorKind::InvalidData, format!("{}:{}: {e}", path.display(), n + 1))),
        }
    }
    Ok(out)
}

fn append(path: &Path, value: &impl Serialize) -> io::Result<()> {
    let mut w = BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?);
    serde_json::to_writer(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    w.get_ref().sync_data()
}

impl Db {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Replays both logs. Returns the db and the still-listed revocations.
    pub fn open(dir: impl AsRef<Path>) -> io::Result<(Self, Vec<(String, i64)>)> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut db = Self {
            users: BTreeMap::new(),
            dir: None,
        };
        for log in [ACCOUNTS, ACTIVITY] {
            for ev in read_lines::<Event>(&dir.join(log))? {
                db.apply(ev);
            }
        }
        let revoked = read_lines::<Revocation>(&dir.join(REVOKED))?
            .into_iter()
            .map(|r| (r.jti, r.exp))
            .collect();
        db.dir = Some(dir);
        Ok((db, revoked))
    }

    /// Persists then applies.
    pub fn record(&mut self, ev: Event) -> io::Result<()> {
        if let Some(dir) = &self.dir {
            append(&dir.join(ev.log()), &ev)?;
        }
        self.apply(ev);
        Ok(())
    }

    pub fn record_revocation(&self, jti: &str, exp: i64) -> io::Result<()> {
        match &self.dir {
            Some(dir) => append(
                &dir.join(REVOKED),
                &Revocation {
                    jti: jti.to_string(),
                    exp,
                },
            ),
            None => Ok(()),
        }
    }

    fn apply(&mut self, ev: Event) {
        match ev {
            Event::Registered {
                user_id,
                password_hash,
                at,
            } => {
                self.users.insert(
                    user_id.clone(),
                    User {
                        user_id,
                        password_hash,
                        created_at: at,
                        profile: None,
                        pending_skills: BTreeSet::new(),
                        chat: Vec::new(),
                        tests: Vec::new(),
                    },
                );
            }
            Event::ProfileSet { user_id, mut profile } => {
                if let Some(u) = self.users.get_mut(&user_id) {
                    profile.skills.extend(std::mem::take(&mut u.pending_skills));
                    u.profile = Some(profile);
                }
            }
            Event::SkillsMerged { user_id, skills } => {
                if let Some(u) = self.users.get_mut(&user_id) {
                    match u.profile.as_mut() {
                        Some(p) => p.skills.extend(skills),
                        None => u.pending_skills.extend(skills),
                    }
                }
            }
            Event::Chat { user_id, turn } => {
                if let Some(u) = self.users.get_mut(&user_id) {
                    u.chat.push(turn);
                }
            }
            Event::ChatCleared { user_id } => {
                if let Some(u) = self.users.get_mut(&user_id) {
                    u.chat.clear();
                }
            }
            Event::TestGenerated { user_id, record } => {
                if let Some(u) = self.users.get_mut(&user_id) {
                    u.tests.push(record);
                }
            }
            Event::TestGraded { user_id, report } => {
                if let Some(r) = self
                    .users
                    .get_mut(&user_id)
                    .and_then(|u| u.tests.iter_mut().find(|t| t.test.test_id == report.test_id))
                {
                    r.report = Some(report);
                }
            }
        }
    }
}
