//! JSON HTTP service over a [`SessionStore`].
//!
//! | method | path | body | result |
//! |---|---|---|---|
//! | `POST` | `/sessions` | `{disorders, notes?}` | session (201) |
//! | `GET` | `/sessions` | | session summaries |
//! | `GET` | `/sessions/{id}` | | session |
//! | `PUT` | `/sessions/{id}/judgments` | `{expected_revision, judgments}` | session |
//! | `GET` | `/sessions/{id}/analysis` | | axioms, class, ranking, ESVs |
//! | `PUT` | `/sessions/{id}/hierarchy` | `{expected_revision, hierarchy}` | session |
//! | `GET` | `/sessions/{id}/weights` | | hierarchy weights |
//! | `PUT` | `/sessions/{id}/scale` | `{expected_revision, scale}` | session |
//! | `GET` | `/sessions/{id}/scale-weights` | | scale weights |
//! | `PUT` | `/sessions/{id}/trisection-params` | `{expected_revision, params}` | session |
//! | `POST` | `/sessions/{id}/trisect` | `{source?, params?}` | trisection (not stored) |
//! | `GET` | `/healthz` | | `{status, version}` |

use std::net::SocketAddr;
use std::path::Path;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::Router;
use csa_core::disorder::Disorder;
use csa_core::order::{build_relation, PairJudgment};
use csa_core::pipeline::{analyze_judgments, scale_weights, to_json, ScaleInput};
use csa_core::store::{Mutation, Session, SessionStore};
use csa_core::trisection::{esv, trisect_with, TrisectionParams};
use csa_core::weighting::{weigh_hierarchy, Hierarchy, WeightVector};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::{Any, CorsLayer};

use crate::error::{ApiError, Kind};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, [(header::CONTENT_TYPE, "application/json")], to_json(&self)).into_response()
    }
}

fn reply<T: Serialize>(status: StatusCode, body: &T) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], to_json(body)).into_response()
}

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::malformed(e.to_string()))
}

type Store = Arc<SessionStore>;

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
}

async fn load(store: &Store, id: String) -> Result<Session, ApiError> {
    let store = store.clone();
    blocking(move || Ok(store.load(&id)?)).await
}

async fn mutate(store: &Store, id: String, expected: u64, m: Mutation) -> Result<Response, ApiError> {
    let store = store.clone();
    let s = blocking(move || Ok(store.update(&id, expected, m)?)).await?;
    Ok(reply(StatusCode::OK, &s))
}

async fn healthz() -> Response {
    reply(StatusCode::OK, &json!({ "status": "ok", "version": VERSION }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateSession {
    disorders: Vec<Disorder>,
    #[serde(default)]
    notes: String,
}

async fn create_session(State(store): State<Store>, body: Bytes) -> Result<Response, ApiError> {
    let req: CreateSession = parse(&body)?;
    let s = blocking(move || Ok(store.create(req.disorders, req.notes)?)).await?;
    Ok(reply(StatusCode::CREATED, &s))
}

async fn list_sessions(State(store): State<Store>) -> Result<Response, ApiError> {
    let list = blocking(move || Ok(store.list()?)).await?;
    Ok(reply(StatusCode::OK, &list))
}

async fn get_session(State(store): State<Store>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    Ok(reply(StatusCode::OK, &load(&store, id).await?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PutJudgments {
    expected_revision: u64,
    judgments: Vec<PairJudgment>,
}

async fn put_judgments(
    State(store): State<Store>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: PutJudgments = parse(&body)?;
    mutate(&store, id, req.expected_revision, Mutation::SetJudgments(req.judgments)).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PutHierarchy {
    expected_revision: u64,
    hierarchy: Option<Hierarchy>,
}

async fn put_hierarchy(
    State(store): State<Store>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: PutHierarchy = parse(&body)?;
    mutate(&store, id, req.expected_revision, Mutation::SetHierarchy(req.hierarchy)).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PutScale {
    expected_revision: u64,
    scale: Option<ScaleInput>,
}

async fn put_scale(
    State(store): State<Store>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: PutScale = parse(&body)?;
    mutate(&store, id, req.expected_revision, Mutation::SetScale(req.scale)).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PutParams {
    expected_revision: u64,
    params: Option<TrisectionParams>,
}

async fn put_params(
    State(store): State<Store>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: PutParams = parse(&body)?;
    mutate(
        &store,
        id,
        req.expected_revision,
        Mutation::SetTrisectionParams(req.params),
    )
    .await
}

async fn analysis(State(store): State<Store>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let s = load(&store, id).await?;
    Ok(reply(StatusCode::OK, &analyze_judgments(&s.disorders, &s.judgments)?))
}

fn hierarchy_of(s: &Session) -> Result<&Hierarchy, ApiError> {
    s.hierarchy
        .as_ref()
        .ok_or_else(|| ApiError::missing("session has no hierarchy; PUT /sessions/{id}/hierarchy first"))
}

fn scale_of(s: &Session) -> Result<&ScaleInput, ApiError> {
    s.scale
        .as_ref()
        .ok_or_else(|| ApiError::missing("session has no importance scale; PUT /sessions/{id}/scale first"))
}

async fn weights(State(store): State<Store>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let s = load(&store, id).await?;
    Ok(reply(StatusCode::OK, &weigh_hierarchy(hierarchy_of(&s)?)?))
}

async fn scale_weights_handler(State(store): State<Store>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let s = load(&store, id).await?;
    Ok(reply(StatusCode::OK, &scale_weights(scale_of(&s)?, &s.disorders)?))
}

/// Values a trisection runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Source {
    Esv,
    Weights,
    ScaleWeights,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct TrisectRequest {
    /// Defaults to `weights` when the session has a hierarchy, else `esv`.
    source: Option<Source>,
    /// Defaults to the session's saved parameters.
    params: Option<TrisectionParams>,
}

async fn trisect(State(store): State<Store>, UrlPath(id): UrlPath<String>, body: Bytes) -> Result<Response, ApiError> {
    let req: TrisectRequest = if body.iter().all(u8::is_ascii_whitespace) {
        TrisectRequest::default()
    } else {
        parse(&body)?
    };
    let s = load(&store, id).await?;
    let params = req
        .params
        .or(s.trisection_params)
        .ok_or_else(|| ApiError::missing("no trisection parameters in the request or the session"))?;
    params.validate()?;
    let source = req.source.unwrap_or(if s.hierarchy.is_some() {
        Source::Weights
    } else {
        Source::Esv
    });
    let values: WeightVector = match source {
        Source::Esv => esv(&build_relation(&s.disorders, &s.judgments)?).values,
        Source::Weights => weigh_hierarchy(hierarchy_of(&s)?)?.global,
        Source::ScaleWeights => scale_weights(scale_of(&s)?, &s.disorders)?.normalized,
    };
    Ok(reply(StatusCode::OK, &trisect_with(&values, &params)?))
}

async fn fallback() -> ApiError {
    ApiError::new(Kind::NotFound, "ROUTE_NOT_FOUND", "no such endpoint")
}

/// The service routes. `allow_origins` enables CORS for those origins.
pub fn router(store: Arc<SessionStore>, allow_origins: &[HeaderValue]) -> Router {
    let app = Router::new()
        .route("/healthz", get(healthz))
        .route("/sessions", post(create_session).get(list_sessions))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/judgments", put(put_judgments))
        .route("/sessions/{id}/analysis", get(analysis))
        .route("/sessions/{id}/hierarchy", put(put_hierarchy))
        .route("/sessions/{id}/weights", get(weights))
        .route("/sessions/{id}/scale", put(put_scale))
        .route("/sessions/{id}/scale-weights", get(scale_weights_handler))
        .route("/sessions/{id}/trisection-params", put(put_params))
        .route("/sessions/{id}/trisect", post(trisect))
        .fallback(fallback)
        .with_state(store);
    if allow_origins.is_empty() {
        return app;
    }
    app.layer(
        CorsLayer::new()
            .allow_origin(allow_origins.to_vec())
            .allow_methods([Method::GET, Method::POST, Method::PUT])
            .allow_headers(Any),
    )
}

/// Opens the store and checks that it accepts writes.
pub fn open_store(data_dir: &Path) -> Result<SessionStore, ApiError> {
    let unwritable = |e: &dyn std::fmt::Display| {
        ApiError::new(
            Kind::Storage,
            "DATA_DIR_UNWRITABLE",
            format!("data directory {} is not writable: {e}", data_dir.display()),
        )
        .with_details(json!({ "data_dir": data_dir.display().to_string() }))
    };
    let store = SessionStore::open(data_dir).map_err(|e| unwritable(&e))?;
    std::fs::write(store.sessions_dir().join(".probe"), b"")
        .and_then(|_| std::fs::remove_file(store.sessions_dir().join(".probe")))
        .map_err(|e| unwritable(&e))?;
    Ok(store)
}

/// Binds the listener; separate from [`serve`] so the bound port is known
/// before requests are served.
pub async fn bind(addr: SocketAddr) -> Result<tokio::net::TcpListener, ApiError> {
    tokio::net::TcpListener::bind(addr).await.map_err(|e| {
        if e.kind() == std::io::ErrorKind::AddrInUse {
            ApiError::new(Kind::Storage, "PORT_IN_USE", format!("{addr} is already in use"))
                .with_details(json!({ "addr": addr.to_string() }))
        } else {
            ApiError::internal(format!("cannot bind {addr}: {e}"))
        }
    })
}

/// Serves until `shutdown` resolves, then lets in-flight requests finish.
pub async fn serve(
    listener: tokio::net::TcpListener,
    app: Router,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> Result<(), ApiError> {
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
        .map_err(|e| ApiError::internal(e.to_string()))
}

/// Resolves on Ctrl-C or, on Unix, SIGTERM.
pub async fn termination_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {}
        _ = term => {}
    }
}
