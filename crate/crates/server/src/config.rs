use std::path::PathBuf;

/// Service settings, normally read from the environment.
#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub secret_key: String,
    pub port: u16,
    pub data_dir: PathBuf,
    /// Exact origins allowed by CORS; empty allows none.
    pub cors_origins: Vec<String>,
    /// Directory of static assets served at `/`, if any.
    pub static_dir: Option<PathBuf>,
    pub rate_limit: usize,
    pub rate_window_secs: i64,
    pub token_ttl_hours: i64,
    /// Seed for the demo job catalog generated when the data dir has none.
    pub seed: u64,
}

pub const DEV_SECRET: &str = "dev-only-secret-change-me";

impl ServerConfig {
    pub fn new(data_dir: impl Into<PathBuf>, secret_key: impl Into<String>) -> Self {
        Self {
            secret_key: secret_key.into(),
            port: 8080,
            data_dir: data_dir.into(),
            cors_origins: Vec::new(),
            static_dir: None,
            rate_limit: 100,
            rate_window_secs: 60,
            token_ttl_hours: 24,
            seed: 2026,
        }
    }

    /// SECRET_KEY, PORT, DATA_DIR, CORS_ORIGINS (comma separated), STATIC_DIR.
    pub fn from_env() -> Result<Self, String> {
        let var = |k: &str| std::env::var(k).ok().filter(|v| !v.trim().is_empty());
        let secret = match var("SECRET_KEY") {
            Some(s) => s,
            None => {
                tracing::warn!("SECRET_KEY not set, using the development secret");
                DEV_SECRET.to_string()
            }
        };
        let mut cfg = Self::new(var("DATA_DIR").unwrap_or_else(|| "data".into()), secret);
        if let Some(p) = var("PORT") {
            cfg.port = p.parse().map_err(|_| format!("PORT is not a port number: {p}"))?;
        }
        if let Some(o) = var("CORS_ORIGINS") {
            cfg.cors_origins = o.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        }
        cfg.static_dir = var("STATIC_DIR").map(PathBuf::from);
        Ok(cfg)
    }
}
