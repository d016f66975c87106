use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{ScheduledTask, SourceDocument};

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("i/o error on {locator}: {message}")]
    Io { locator: String, message: String },
    #[error("malformed document {locator}: {message}")]
    Malformed { locator: String, message: String },
    #[error("http error on {locator}: {message}")]
    Http { locator: String, message: String },
}

/// Source of documents for scheduled tasks.
pub trait Fetcher {
    /// Item locators for one task, in fetch order.
    fn list(&self, task: &ScheduledTask) -> Result<Vec<String>, FetchError>;

    fn fetch(&self, locator: &str) -> Result<SourceDocument, FetchError>;
}

/// Request-header hook for network fetchers (user agent, cookies, referrer).
pub trait HeaderProvider: Send + Sync {
    fn headers(&self, request_no: u64) -> Vec<(String, String)>;
}

pub const DEFAULT_USER_AGENTS: [&str; 4] = [
    "Mozilla/5.0 (X11; Linux x86_64) AppleWebKit/537.36 (KHTML, like Gecko) Chrome/126.0 Safari/537.36",
    "Mozilla/5.0 (X11; Linux x86_64; rv:128.0) Gecko/20100101 Firefox/128.0",
    "Mozilla/5.0 (Macintosh; Intel Mac OS X 14_5) AppleWebKit/605.1.15 (KHTML, like Gecko) Version/17.5 Safari/605.1.15",
    "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, like Gecko) Chrome/126.0 Safari/537.36 Edg/126.0",
];

/// Fixed header set, cycling the user agent per request.
#[derive(Debug, Clone)]
pub struct StaticHeaders {
    pub user_agents: Vec<String>,
    pub extra: Vec<(String, String)>,
}

impl Default for StaticHeaders {
    fn default() -> Self {
        Self {
            user_agents: DEFAULT_USER_AGENTS.iter().map(|s| s.to_string()).collect(),
            extra: Vec::new(),
        }
    }
}

impl HeaderProvider for StaticHeaders {
    fn headers(&self, request_no: u64) -> Vec<(String, String)> {
        let mut out = self.extra.clone();
        if !self.user_agents.is_empty() {
            let ua = &self.user_agents[(request_no % self.user_agents.len() as u64) as usize];
            out.push(("User-Agent".into(), ua.clone()));
        }
        out
    }
}

/// Reads `*.json` [`SourceDocument`] files from `root/<task.source>`.
#[derive(Debug, Clone)]
pub struct FixtureDirFetcher {
    root: PathBuf,
}

impl FixtureDirFetcher {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }
}

impl Fetcher for FixtureDirFetcher {
    fn list(&self, task: &ScheduledTask) -> Result<Vec<String>, FetchError> {
        let dir = if task.source.is_empty() {
            self.root.clone()
        } else {
            self.root.join(&task.source)
        };
        if !dir.is_dir() {
            return Ok(Vec::new());
        }
        let io = |e: std::io::Error| FetchError::Io {
            locator: dir.display().to_string(),
            message: e.to_string(),
        };
        let mut items: Vec<String> = fs::read_dir(&dir)
            .map_err(io)?
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .map(|p| p.display().to_string())
            .collect();
        items.sort();
        Ok(items)
    }

    fn fetch(&self, locator: &str) -> Result<SourceDocument, FetchError> {
        let text = fs::read_to_string(locator).map_err(|e| FetchError::Io {
            locator: locator.into(),
            message: e.to_string(),
        })?;
        let doc: SourceDocument = serde_json::from_str(&text).map_err(|e| FetchError::Malformed {
            locator: locator.into(),
            message: e.to_string(),
        })?;
        doc.validate().map_err(|e| FetchError::Malformed {
            locator: locator.into(),
            message: e.to_string(),
        })?;
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn user_agent_rotates() {
        let h = StaticHeaders::default();
        let ua = |n| h.headers(n).into_iter().find(|(k, _)| k == "User-Agent").unwrap().1;
        assert_ne!(ua(0), ua(1));
        assert_eq!(ua(0), ua(4));
    }

    #[test]
    fn missing_task_directory_lists_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let f = FixtureDirFetcher::new(dir.path());
        let task = ScheduledTask::new("alerts", super::super::Cadence::Hourly);
        assert!(f.list(&task).unwrap().is_empty());
    }
}
