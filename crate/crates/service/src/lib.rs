//! HTTP/JSON session service for exploring seed mutation interactively.
//!
//! Sessions live in memory. Requests on one session are serialized by a per-session lock while
//! different sessions proceed concurrently.

pub mod api;
pub mod session;
pub mod store;

use std::net::SocketAddr;
use std::time::Duration;

use clustersing::quiver::DEFAULT_FINITE_TYPE_BUDGET;

pub use api::{router, AppState, SCHEMA_VERSION};

pub const PORT_ENV: &str = "CLUSTERSING_PORT";
pub const DEFAULT_PORT: u16 = 8731;

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub host: String,
    pub port: u16,
    pub capacity: usize,
    pub idle_ttl: Duration,
    pub finite_type_budget: usize,
    pub max_rank: usize,
    pub cors_origins: Vec<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            host: "127.0.0.1".into(),
            port: DEFAULT_PORT,
            capacity: 1024,
            idle_ttl: Duration::from_secs(60 * 60),
            finite_type_budget: DEFAULT_FINITE_TYPE_BUDGET,
            max_rank: 12,
            cors_origins: vec!["http://localhost:5173".into(), "http://127.0.0.1:5173".into()],
        }
    }
}

/// Binds the listener and returns its address with the server task.
pub async fn spawn(config: ServiceConfig) -> anyhow::Result<(SocketAddr, tokio::task::JoinHandle<std::io::Result<()>>)> {
    let listener = tokio::net::TcpListener::bind((config.host.as_str(), config.port)).await?;
    let addr = listener.local_addr()?;
    let app = router(AppState::new(config));
    let handle = tokio::spawn(async move { axum::serve(listener, app).await });
    Ok((addr, handle))
}

/// Serves until the process is stopped.
pub async fn serve(config: ServiceConfig) -> anyhow::Result<()> {
    let (addr, handle) = spawn(config).await?;
    eprintln!("listening on http://{addr}");
    handle.await??;
    Ok(())
}
