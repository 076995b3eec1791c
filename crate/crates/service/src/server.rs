//! JSON API over the session store, plus optional static UI assets.

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::multipart::MultipartError;
use axum::extract::{DefaultBodyLimit, Multipart, Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::Router;
use sdrd_core::report::canonicalize;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::load::{ErrorBody, InputError, Source};
use crate::session::{CreateError, DraftSlot, Session, SessionStore};

pub const DEFAULT_COVERAGE_LIMIT: usize = 100;
pub const MAX_COVERAGE_LIMIT: usize = 10_000;

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub max_upload_bytes: usize,
    /// Directory with the built web UI, served for non-API paths.
    pub assets: Option<PathBuf>,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            max_upload_bytes: 64 * 1024 * 1024,
            assets: None,
        }
    }
}

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    BadRequest(ErrorBody),
    PayloadTooLarge(String),
    Internal(String),
}

impl ApiError {
    fn simple(kind: &str, message: impl Into<String>) -> ErrorBody {
        ErrorBody {
            error: kind.to_string(),
            message: message.into(),
            file: None,
            line: None,
        }
    }

    fn bad_request(kind: &str, message: impl Into<String>) -> Self {
        ApiError::BadRequest(Self::simple(kind, message))
    }
}

impl From<InputError> for ApiError {
    fn from(e: InputError) -> Self {
        ApiError::BadRequest(e.body())
    }
}

impl From<CreateError> for ApiError {
    fn from(e: CreateError) -> Self {
        match e {
            CreateError::Input(e) => e.into(),
            CreateError::Missing(message) => ApiError::bad_request("MissingUpload", message),
            CreateError::Export(e) => ApiError::Internal(e.to_string()),
        }
    }
}

impl From<MultipartError> for ApiError {
    fn from(e: MultipartError) -> Self {
        if e.status() == StatusCode::PAYLOAD_TOO_LARGE {
            ApiError::PayloadTooLarge(e.body_text())
        } else {
            ApiError::bad_request("MalformedUpload", e.body_text())
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::NotFound(message) => (StatusCode::NOT_FOUND, Self::simple("NotFound", message)),
            ApiError::BadRequest(body) => (StatusCode::BAD_REQUEST, body),
            ApiError::PayloadTooLarge(message) => {
                (StatusCode::PAYLOAD_TOO_LARGE, Self::simple("PayloadTooLarge", message))
            }
            ApiError::Internal(message) => (StatusCode::INTERNAL_SERVER_ERROR, Self::simple("Internal", message)),
        };
        json_response(status, &body)
    }
}

type ApiResult = Result<Response, ApiError>;

/// Serializes with sorted keys so every response for the same state is
/// byte-identical.
fn json_response<S: Serialize>(status: StatusCode, body: &S) -> Response {
    let value = canonicalize(serde_json::to_value(body).expect("API bodies serialize"));
    let bytes = serde_json::to_vec(&value).expect("JSON values serialize");
    (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response()
}

fn session(store: &SessionStore, id: &str) -> Result<Arc<Session>, ApiError> {
    store
        .get(id)
        .ok_or_else(|| ApiError::NotFound(format!("no session with id '{id}'")))
}

fn decode(name: String, bytes: &[u8]) -> Result<Source, ApiError> {
    let text = String::from_utf8(bytes.to_vec())
        .map_err(|e| ApiError::bad_request("InvalidEncoding", format!("{name} is not valid UTF-8: {e}")))?;
    Ok(Source::new(name, text))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))
}

async fn health() -> Response {
    json_response(StatusCode::OK, &json!({ "status": "ok" }))
}

async fn algorithms(State(store): State<Arc<SessionStore>>) -> Response {
    let list: Vec<Value> = store
        .registry()
        .iter()
        .map(|(name, dialect)| json!({ "name": name, "dialect": dialect.as_str() }))
        .collect();
    json_response(StatusCode::OK, &json!({ "algorithms": list }))
}

async fn create_session(State(store): State<Arc<SessionStore>>, mut multipart: Multipart) -> ApiResult {
    let (mut data, mut rules, mut test) = (None, None, None);
    while let Some(field) = multipart.next_field().await? {
        let field_name = field.name().unwrap_or_default().to_string();
        let slot = DraftSlot::parse(&field_name).ok_or_else(|| {
            ApiError::bad_request(
                "MalformedUpload",
                format!("unexpected field '{field_name}'; expected data, rules or test"),
            )
        })?;
        let name = field.file_name().map_or_else(|| field_name.clone(), str::to_string);
        let bytes = field.bytes().await?;
        let source = decode(name, &bytes)?;
        match slot {
            DraftSlot::Data => data = Some(source),
            DraftSlot::Rules => rules = Some(source),
            DraftSlot::Test => test = Some(source),
        }
    }
    let (Some(data), Some(rules)) = (data, rules) else {
        return Err(ApiError::bad_request(
            "MissingUpload",
            "multipart body must contain 'data' and 'rules' fields",
        ));
    };
    let created = blocking(move || store.create(&data, &rules, test.as_ref())).await??;
    Ok(json_response(StatusCode::CREATED, &created.info()))
}

async fn create_draft(State(store): State<Arc<SessionStore>>) -> Response {
    json_response(StatusCode::CREATED, &store.create_draft())
}

async fn draft_status(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult {
    let status = store
        .draft_status(&id)
        .ok_or_else(|| ApiError::NotFound(format!("no draft with id '{id}'")))?;
    Ok(json_response(StatusCode::OK, &status))
}

#[derive(Debug, Deserialize)]
struct UploadQuery {
    name: Option<String>,
}

async fn put_draft(
    State(store): State<Arc<SessionStore>>,
    Path((id, slot)): Path<(String, String)>,
    Query(query): Query<UploadQuery>,
    body: Bytes,
) -> ApiResult {
    let slot = DraftSlot::parse(&slot).ok_or_else(|| ApiError::NotFound(format!("no upload slot '{slot}'")))?;
    let source = decode(query.name.unwrap_or_else(|| slot.as_str().to_string()), &body)?;
    let outcome = blocking(move || store.put_draft(&id, slot, source).ok_or(id)).await?;
    let status = outcome.map_err(|id| ApiError::NotFound(format!("no draft with id '{id}'")))??;
    Ok(json_response(StatusCode::OK, &status))
}

async fn evaluate_draft(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult {
    let outcome = blocking(move || store.evaluate_draft(&id).ok_or(id)).await?;
    let created = outcome.map_err(|id| ApiError::NotFound(format!("no draft with id '{id}'")))??;
    Ok(json_response(StatusCode::CREATED, &created.info()))
}

/// Rule row of the overview: everything but the covered-example list.
fn rule_summary(rule: &sdrd_core::report::RuleDoc) -> Value {
    json!({
        "id": rule.id,
        "name": rule.name,
        "antecedent": rule.antecedent,
        "consequent": rule.consequent,
        "contingency": rule.contingency,
        "measures": rule.measures,
    })
}

async fn overview(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&store, &id)?;
    let doc = &s.document;
    let body = json!({
        "session": s.info(),
        "algorithm": doc.algorithm,
        "dataset": doc.dataset,
        "rules": doc.rules.iter().map(rule_summary).collect::<Vec<_>>(),
        "plots": doc.plots,
    });
    Ok(json_response(StatusCode::OK, &body))
}

async fn rule_detail(State(store): State<Arc<SessionStore>>, Path((id, k)): Path<(String, String)>) -> ApiResult {
    let s = session(&store, &id)?;
    let doc = &s.document;
    let rule = k
        .parse::<usize>()
        .ok()
        .and_then(|k| doc.rule(k))
        .ok_or_else(|| ApiError::NotFound(format!("session '{id}' has no rule '{k}'")))?;
    let covered: Vec<Value> = rule
        .covered
        .iter()
        .map(|c| {
            let example = doc.coverage.get(c.example);
            json!({
                "example": c.example,
                "degree": c.degree,
                "channel": c.channel,
                "color": c.color,
                "class": example.and_then(|e| e.class.clone()),
                "values": example.map(|e| e.values.clone()).unwrap_or_default(),
            })
        })
        .collect();
    let mut body = rule_summary(rule);
    body["covered"] = Value::Array(covered);
    body["fuzzy"] = Value::Bool(doc.is_fuzzy());
    body["attributes"] = doc.dataset.attributes.iter().map(|a| a.name.clone()).collect();
    body["point"] = serde_json::to_value(doc.plots.scatter.points.iter().find(|p| p.rule_id == rule.id))
        .expect("plot points serialize");
    Ok(json_response(StatusCode::OK, &body))
}

#[derive(Debug, Deserialize)]
struct Page {
    offset: Option<usize>,
    limit: Option<usize>,
}

async fn coverage(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Query(page): Query<Page>,
) -> ApiResult {
    let s = session(&store, &id)?;
    let doc = &s.document;
    let total = doc.coverage.len();
    let offset = page.offset.unwrap_or(0).min(total);
    let limit = page.limit.unwrap_or(DEFAULT_COVERAGE_LIMIT).min(MAX_COVERAGE_LIMIT);
    let end = offset.saturating_add(limit).min(total);
    let body = json!({
        "total": total,
        "offset": offset,
        "limit": limit,
        "fuzzy": doc.is_fuzzy(),
        "attributes": doc.dataset.attributes.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
        "examples": &doc.coverage[offset..end],
    });
    Ok(json_response(StatusCode::OK, &body))
}

async fn export_zip(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&store, &id)?;
    Ok((
        [
            (header::CONTENT_TYPE, "application/zip".to_string()),
            (
                header::CONTENT_DISPOSITION,
                format!("attachment; filename=\"report-{}.zip\"", s.id),
            ),
        ],
        s.zip.clone(),
    )
        .into_response())
}

async fn result_json(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&store, &id)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], s.json.clone()).into_response())
}

async fn api_not_found() -> ApiError {
    ApiError::NotFound("no such endpoint".into())
}

pub fn router(store: Arc<SessionStore>, config: &ServerConfig) -> Router {
    let api = Router::new()
        .route("/health", get(health))
        .route("/algorithms", get(algorithms))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/overview", get(overview))
        .route("/sessions/{id}/rules/{k}", get(rule_detail))
        .route("/sessions/{id}/coverage", get(coverage))
        .route("/sessions/{id}/export.zip", get(export_zip))
        .route("/sessions/{id}/result.json", get(result_json))
        .route("/drafts", post(create_draft))
        .route("/drafts/{id}", get(draft_status))
        .route("/drafts/{id}/evaluate", post(evaluate_draft))
        .route("/drafts/{id}/{slot}", put(put_draft))
        .fallback(api_not_found)
        .layer(DefaultBodyLimit::max(config.max_upload_bytes))
        .with_state(store);

    let app = Router::new().nest("/api", api);
    match &config.assets {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

/// Serves until Ctrl-C.
pub async fn serve(listener: tokio::net::TcpListener, app: Router) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
