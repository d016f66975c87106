//! HTTP/JSON service: auth, chat, recommendations, resume, profile and mock
//! tests over `jobsphere-core`.

pub mod auth;
pub mod config;
pub mod error;
pub mod limit;
pub mod routes;
pub mod state;
pub mod store;

use std::sync::Arc;

use axum::http::{HeaderValue, Method};
use axum::Router;
use tower_http::cors::{AllowHeaders, CorsLayer};
use tower_http::services::ServeDir;

pub use config::ServerConfig;
pub use routes::{router, Recommendation, ROUTES};
pub use state::AppState;

/// API routes plus CORS and the optional static directory.
pub fn app(state: Arc<AppState>) -> Router {
    let origins: Vec<HeaderValue> = state.config.cors_origins.iter().filter_map(|o| o.parse().ok()).collect();
    let cors = CorsLayer::new()
        .allow_origin(origins)
        .allow_methods([Method::GET, Method::POST, Method::PUT, Method::DELETE])
        .allow_headers(AllowHeaders::mirror_request());
    let static_dir = state.config.static_dir.clone();
    let mut app = router(state);
    if let Some(dir) = static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    app.layer(cors)
}

/// Binds `0.0.0.0:port` and serves until the process is stopped.
pub async fn serve(state: Arc<AppState>) -> anyhow::Result<()> {
    let addr = std::net::SocketAddr::from(([0, 0, 0, 0], state.config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app(state)).await?;
    Ok(())
}
