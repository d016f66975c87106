use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use chrono::Utc;

use super::{DocKind, FetchError, Fetcher, HeaderProvider, ScheduledTask, SourceDocument, StaticHeaders};

/// Fetches over HTTP. `task.source` is a feed URL answering with a JSON array
/// of item URLs; each item answers with a JSON [`SourceDocument`], or with
/// plain text that becomes a document of `fallback_kind` keyed by its URL.
pub struct HttpFetcher {
    agent: ureq::Agent,
    headers: Box<dyn HeaderProvider>,
    requests: AtomicU64,
    pub fallback_kind: DocKind,
}

impl HttpFetcher {
    pub fn new(timeout: Duration) -> Self {
        Self::with_headers(timeout, Box::new(StaticHeaders::default()))
    }

    pub fn with_headers(timeout: Duration, headers: Box<dyn HeaderProvider>) -> Self {
        Self {
            agent: ureq::AgentBuilder::new().timeout(timeout).build(),
            headers,
            requests: AtomicU64::new(0),
            fallback_kind: DocKind::Alert,
        }
    }

    fn get(&self, url: &str) -> Result<(String, String), FetchError> {
        let n = self.requests.fetch_add(1, Ordering::Relaxed);
        let mut req = self.agent.get(url);
        for (k, v) in self.headers.headers(n) {
            req = req.set(&k, &v);
        }
        let err = |message: String| FetchError::Http {
            locator: url.to_string(),
            message,
        };
        let resp = req.call().map_err(|e| err(e.to_string()))?;
        let ctype = resp.content_type().to_string();
        let body = resp.into_string().map_err(|e| err(e.to_string()))?;
        Ok((ctype, body))
    }
}

impl Fetcher for HttpFetcher {
    fn list(&self, task: &ScheduledTask) -> Result<Vec<String>, FetchError> {
        if task.source.is_empty() {
            return Ok(Vec::new());
        }
        let (_, body) = self.get(&task.source)?;
        serde_json::from_str(&body).map_err(|e| FetchError::Malformed {
            locator: task.source.clone(),
            message: format!("feed is not a JSON array of URLs: {e}"),
        })
    }

    fn fetch(&self, locator: &str) -> Result<SourceDocument, FetchError> {
        let (ctype, body) = self.get(locator)?;
        let malformed = |message: String| FetchError::Malformed {
            locator: locator.to_string(),
            message,
        };
        let doc = if ctype.contains("json") {
            serde_json::from_str::<SourceDocument>(&body).map_err(|e| malformed(e.to_string()))?
        } else {
            SourceDocument::new(locator, self.fallback_kind, body, Utc::now(), locator)
        };
        doc.validate().map_err(|e| malformed(e.to_string()))?;
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{BufRead, BufReader, Write};
    use std::net::TcpListener;
    use std::sync::mpsc;

    /// Serves `responses` in order, one connection each, and reports each
    /// request's User-Agent.
    fn serve(responses: Vec<(&'static str, String)>) -> (String, mpsc::Receiver<String>) {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = format!("http://{}", listener.local_addr().unwrap());
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            for (ctype, body) in responses {
                let (mut s, _) = listener.accept().unwrap();
                let mut ua = String::new();
                let mut r = BufReader::new(s.try_clone().unwrap());
                loop {
                    let mut line = String::new();
                    if r.read_line(&mut line).unwrap() == 0 || line == "\r\n" {
                        break;
                    }
                    if let Some(v) = line.to_ascii_lowercase().strip_prefix("user-agent:") {
                        ua = v.trim().to_string();
                    }
                }
                tx.send(ua).unwrap();
                write!(
                    s,
                    "HTTP/1.1 200 OK\r\nContent-Type: {ctype}\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                )
                .unwrap();
            }
        });
        (addr, rx)
    }

    #[test]
    fn lists_feed_and_fetches_json_and_text_items() {
        let doc = r#"{"doc_id":"a1","kind":"alert","text":"last date 30 June","fetched_at":"2026-03-01T00:00:00Z","origin":"x"}"#;
        let (base, rx) = serve(vec![
            ("application/json", r#"["http://x/1","http://x/2"]"#.to_string()),
            ("application/json", doc.to_string()),
            ("text/plain", "results declared today".to_string()),
        ]);
        let f = HttpFetcher::new(Duration::from_secs(5));
        let mut task = ScheduledTask::new("alerts", super::super::Cadence::Hourly);
        task.source = format!("{base}/feed");
        assert_eq!(f.list(&task).unwrap(), vec!["http://x/1", "http://x/2"]);
        assert_eq!(f.fetch(&format!("{base}/1")).unwrap().doc_id, "a1");
        let plain = f.fetch(&format!("{base}/2")).unwrap();
        assert_eq!(plain.text, "results declared today");
        assert_eq!(plain.kind, DocKind::Alert);
        let agents: Vec<String> = rx.iter().take(3).collect();
        assert_ne!(agents[0], agents[1]);
    }

    #[test]
    fn unreachable_host_is_an_http_error() {
        let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
        let f = HttpFetcher::new(Duration::from_millis(500));
        let err = f.fetch(&format!("http://127.0.0.1:{port}/x")).unwrap_err();
        assert!(matches!(err, FetchError::Http { .. }));
    }
}
