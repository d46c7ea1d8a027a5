//! HTTP handlers and wire types.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clustersing::quiver::{dynkin_seed, is_finite_type, DynkinType, ExchangeMatrix, FiniteTypeStatus, MatrixJson};
use clustersing::seed::{Seed, SeedJson};
use clustersing::FieldSpec;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

use crate::session::{Session, SessionError, SessionExport, Step};
use crate::store::{SessionStore, SharedSession};
use crate::ServiceConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<SessionStore>,
    pub config: Arc<ServiceConfig>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> AppState {
        AppState { store: Arc::new(SessionStore::new(config.capacity, config.idle_ttl)), config: Arc::new(config) }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("unknown session {0}")]
    NotFound(String),
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Internal(String),
}

impl ApiError {
    fn status(&self) -> (StatusCode, &'static str) {
        match self {
            ApiError::NotFound(_) => (StatusCode::NOT_FOUND, "not_found"),
            ApiError::BadRequest(_) => (StatusCode::BAD_REQUEST, "bad_request"),
            ApiError::Conflict(_) => (StatusCode::CONFLICT, "conflict"),
            ApiError::Internal(_) => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::VertexOutOfRange { .. } => ApiError::BadRequest(e.to_string()),
            SessionError::EmptyHistory => ApiError::Conflict(e.to_string()),
            SessionError::Algebra(a) => ApiError::BadRequest(a.to_string()),
        }
    }
}

fn error_body(code: &str, message: &str) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "error": { "code": code, "message": message } })
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, code) = self.status();
        (status, Json(error_body(code, &self.to_string()))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("malformed body: {e}")))
}

fn blocking_failed(e: tokio::task::JoinError) -> ApiError {
    ApiError::Internal(format!("worker failed: {e}"))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    #[serde(rename = "type")]
    kind: Option<String>,
    rank: Option<usize>,
    matrix: Option<MatrixJson>,
    #[serde(default)]
    characteristic: u64,
    session: Option<SessionExport>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateRequest {
    vertex: usize,
}

#[derive(Debug, Serialize)]
pub struct LaurentEntry {
    pub position: usize,
    pub text: String,
    pub numerator: String,
    pub denominator: String,
}

fn laurent(seed: &Seed) -> Vec<LaurentEntry> {
    seed.cluster()
        .iter()
        .enumerate()
        .map(|(i, c)| LaurentEntry {
            position: i + 1,
            text: c.to_string(),
            numerator: c.numerator().to_string(),
            denominator: c.denominator().to_string(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct SeedView {
    schema_version: u32,
    id: String,
    seed: SeedJson,
    laurent: Vec<LaurentEntry>,
    step: usize,
    visited_count: usize,
}

impl SeedView {
    fn of(s: &Session) -> SeedView {
        SeedView {
            schema_version: SCHEMA_VERSION,
            id: s.id.clone(),
            seed: s.current().to_json(),
            laurent: laurent(s.current()),
            step: s.history().len(),
            visited_count: s.visited().len(),
        }
    }
}

#[derive(Debug, Serialize)]
struct MutateView {
    #[serde(flatten)]
    view: SeedView,
    vertex: usize,
    revisited: bool,
    hash: String,
}

#[derive(Debug, Serialize)]
struct FullView {
    schema_version: u32,
    id: String,
    characteristic: u64,
    initial: SeedJson,
    seed: SeedJson,
    laurent: Vec<LaurentEntry>,
    step: usize,
    history: Vec<Step>,
    visited_count: usize,
    visited: Vec<String>,
    finite_type: Value,
    created_ms: u64,
    active_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
}

pub fn router(state: AppState) -> Router {
    let origins: Vec<HeaderValue> = state.config.cors_origins.iter().filter_map(|o| o.parse().ok()).collect();
    let cors = CorsLayer::new()
        .allow_origin(origins)
        .allow_methods([Method::GET, Method::POST, Method::DELETE])
        .allow_headers([axum::http::header::CONTENT_TYPE]);
    Router::new()
        .route("/healthz", get(healthz))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(full_state).delete(delete))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/export", get(export))
        .fallback(|| async { ApiError::NotFound("route".into()) })
        .layer(cors)
        .with_state(state)
}

async fn healthz(State(state): State<AppState>) -> Json<Value> {
    Json(json!({ "schema_version": SCHEMA_VERSION, "status": "ok", "sessions": state.store.len() }))
}

fn new_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

fn build_session(req: CreateRequest, max_rank: usize) -> ApiResult<Session> {
    let id = new_id();
    let rank_guard = |n: usize| {
        if n > max_rank {
            Err(ApiError::BadRequest(format!("rank {n} exceeds the session limit {max_rank}")))
        } else {
            Ok(())
        }
    };
    match (req.kind, req.matrix, req.session) {
        (Some(kind), None, None) => {
            let kind: DynkinType = kind.parse().map_err(|e: clustersing::AlgebraError| ApiError::BadRequest(e.to_string()))?;
            let rank = req.rank.or(kind.fixed_rank()).ok_or_else(|| ApiError::BadRequest(format!("type {kind} needs a rank")))?;
            rank_guard(rank)?;
            let field = FieldSpec::new(req.characteristic).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            let seed = dynkin_seed(kind, rank).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            Ok(Session::new(id, field, seed.matrix))
        }
        (None, Some(m), None) => {
            rank_guard(m.n)?;
            let field = FieldSpec::new(req.characteristic).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            let matrix = ExchangeMatrix::from_json(&m).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            Ok(Session::new(id, field, matrix))
        }
        (None, None, Some(export)) => {
            rank_guard(export.initial.n)?;
            Ok(Session::import(id, &export)?)
        }
        _ => Err(ApiError::BadRequest("give exactly one of type, matrix or session".into())),
    }
}

async fn create(State(state): State<AppState>, body: Bytes) -> ApiResult<(StatusCode, Json<SeedView>)> {
    let req: CreateRequest = parse_body(&body)?;
    let max_rank = state.config.max_rank;
    let session = tokio::task::spawn_blocking(move || build_session(req, max_rank)).await.map_err(blocking_failed)??;
    let view = SeedView::of(&session);
    state.store.insert(session);
    Ok((StatusCode::CREATED, Json(view)))
}

fn lookup(state: &AppState, id: &str) -> ApiResult<SharedSession> {
    state.store.get(id).ok_or_else(|| ApiError::NotFound(id.to_string()))
}

async fn mutate(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<MutateView>> {
    let req: MutateRequest = parse_body(&body)?;
    let session = lookup(&state, &id)?.lock_owned().await;
    let view = tokio::task::spawn_blocking(move || {
        let mut session = session;
        let revisited = session.mutate(req.vertex)?;
        let hash = session.history().last().map(|s| s.hash.clone()).unwrap_or_default();
        Ok::<_, ApiError>(MutateView { view: SeedView::of(&session), vertex: req.vertex, revisited, hash })
    })
    .await
    .map_err(blocking_failed)??;
    Ok(Json(view))
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SeedView>> {
    let shared = lookup(&state, &id)?;
    let mut session = shared.lock().await;
    session.undo()?;
    Ok(Json(SeedView::of(&session)))
}

async fn export(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let shared = lookup(&state, &id)?;
    let session = shared.lock().await;
    let mut v = serde_json::to_value(session.export()).map_err(|e| ApiError::Internal(e.to_string()))?;
    v["schema_version"] = json!(SCHEMA_VERSION);
    Ok(Json(v))
}

async fn delete(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<StatusCode> {
    if state.store.remove(&id) {
        Ok(StatusCode::NO_CONTENT)
    } else {
        Err(ApiError::NotFound(id))
    }
}

async fn full_state(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Response> {
    let shared = lookup(&state, &id)?;
    let snapshot = shared.lock().await.clone();
    let budget = state.config.finite_type_budget;
    let matrix = snapshot.current().matrix().clone();
    let status = tokio::task::spawn_blocking(move || is_finite_type(&matrix, budget)).await.map_err(blocking_failed)?;
    let (code, finite_type, error) = match status {
        Ok(FiniteTypeStatus::NotFoundWithinBudget { visited }) => (
            StatusCode::SERVICE_UNAVAILABLE,
            json!({ "status": "indeterminate", "visited": visited }),
            Some(error_body("budget_exhausted", &format!("finite-type probe stopped after {visited} classes"))["error"].clone()),
        ),
        Ok(s) => (StatusCode::OK, serde_json::to_value(&s).map_err(|e| ApiError::Internal(e.to_string()))?, None),
        Err(e) => (StatusCode::OK, json!({ "status": "indeterminate", "reason": e.to_string() }), None),
    };
    let s = &snapshot;
    let view = FullView {
        schema_version: SCHEMA_VERSION,
        id: s.id.clone(),
        characteristic: s.field().characteristic(),
        initial: s.initial().to_json(),
        seed: s.current().to_json(),
        laurent: laurent(s.current()),
        step: s.history().len(),
        history: s.history().to_vec(),
        visited_count: s.visited().len(),
        visited: s.visited().iter().cloned().collect(),
        finite_type,
        created_ms: s.created_ms,
        active_ms: s.active_ms,
        error,
    };
    Ok((code, Json(view)).into_response())
}
