use std::sync::Arc;

use jobsphere_core::clock::SystemClock;
use jobsphere_server::{serve, AppState, ServerConfig};

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let config = ServerConfig::from_env().map_err(anyhow::Error::msg)?;
    let state = AppState::open(config, Arc::new(SystemClock))?;
    serve(state).await
}
