//! SPARQL endpoint over a frozen corpus, plus the small JSON API used by
//! the explorer UI.
//!
//! | route               | purpose                                   |
//! |---------------------|-------------------------------------------|
//! | `GET/POST /sparql`  | SPARQL protocol query                     |
//! | `GET /schema`       | class tree                                |
//! | `GET /concepts`     | instances of `?class=`                    |
//! | `GET /queries`      | canned queries; `/queries/{name}` for one |
//! | `GET /`             | UI assets, or a placeholder page          |

mod negotiate;

use std::collections::{BTreeMap, HashMap};
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode, Uri};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use qkb_core::api::{CannedQuery, Concept, ConceptList, ErrorBody, FORM_MEDIA_TYPE, MAX_QUERY_BYTES, SPARQL_QUERY_MEDIA_TYPE};
use qkb_core::corpus::Corpus;
use qkb_core::sparql::{evaluate, parse_query_with, serialize_results, ResultFormat};
use qkb_core::Iri;
use thiserror::Error;
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use negotiate::negotiate;

/// Shared, read-only state of a running endpoint.
#[derive(Clone)]
pub struct EndpointState {
    corpus: Arc<Corpus>,
    queries: Arc<BTreeMap<String, String>>,
    ui_dir: Option<PathBuf>,
}

impl EndpointState {
    pub fn new(corpus: Corpus, queries: BTreeMap<String, String>) -> Self {
        EndpointState { corpus: Arc::new(corpus), queries: Arc::new(queries), ui_dir: None }
    }

    /// Serve static UI files from `dir` under `/`.
    pub fn with_ui_dir(mut self, dir: PathBuf) -> Self {
        self.ui_dir = Some(dir);
        self
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error("cannot bind {addr}: {source}")]
    Bind { addr: SocketAddr, source: io::Error },
    #[error("server failed: {0}")]
    Io(#[from] io::Error),
}

pub fn router(state: EndpointState) -> Router {
    let ui_dir = state.ui_dir.clone().filter(|d| d.join("index.html").is_file());
    let mut app = Router::new()
        .route("/sparql", get(sparql_get).post(sparql_post))
        .route("/schema", get(schema))
        .route("/concepts", get(concepts))
        .route("/queries", get(list_queries))
        .route("/queries/{name}", get(one_query));
    app = match ui_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.route("/", get(placeholder)),
    };
    app.with_state(state).layer(CorsLayer::permissive())
}

pub async fn bind(addr: SocketAddr) -> Result<TcpListener, ServeError> {
    TcpListener::bind(addr).await.map_err(|source| ServeError::Bind { addr, source })
}

/// Runs until the task is cancelled.
pub async fn serve(listener: TcpListener, state: EndpointState) -> Result<(), ServeError> {
    axum::serve(listener, router(state)).await?;
    Ok(())
}

fn error(status: StatusCode, body: ErrorBody) -> Response {
    (status, Json(body)).into_response()
}

async fn sparql_get(State(state): State<EndpointState>, Query(params): Query<HashMap<String, String>>, headers: HeaderMap) -> Response {
    match params.get("query") {
        Some(text) => run_query(state, text.clone(), &headers).await,
        None => error(StatusCode::BAD_REQUEST, ErrorBody::new("missing `query` parameter")),
    }
}

async fn sparql_post(State(state): State<EndpointState>, uri: Uri, headers: HeaderMap, body: Body) -> Response {
    let Ok(bytes) = to_bytes(body, MAX_QUERY_BYTES * 3).await else {
        return too_large();
    };
    let content_type = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .map(|v| v.split(';').next().unwrap_or("").trim().to_ascii_lowercase());
    let text = match content_type.as_deref() {
        Some(SPARQL_QUERY_MEDIA_TYPE) => match String::from_utf8(bytes.to_vec()) {
            Ok(text) => Some(text),
            Err(_) => return error(StatusCode::BAD_REQUEST, ErrorBody::new("query body is not UTF-8")),
        },
        Some(FORM_MEDIA_TYPE) => match serde_urlencoded::from_bytes::<HashMap<String, String>>(&bytes) {
            Ok(mut form) => form.remove("query"),
            Err(e) => return error(StatusCode::BAD_REQUEST, ErrorBody::new(format!("malformed form body: {e}"))),
        },
        _ if bytes.is_empty() => {
            serde_urlencoded::from_str::<HashMap<String, String>>(uri.query().unwrap_or("")).ok().and_then(|mut q| q.remove("query"))
        }
        other => {
            return error(
                StatusCode::UNSUPPORTED_MEDIA_TYPE,
                ErrorBody::new(format!(
                    "unsupported content type {}; send {SPARQL_QUERY_MEDIA_TYPE} or {FORM_MEDIA_TYPE}",
                    other.unwrap_or("(none)")
                )),
            )
        }
    };
    match text {
        Some(text) => run_query(state, text, &headers).await,
        None => error(StatusCode::BAD_REQUEST, ErrorBody::new("missing `query` field")),
    }
}

fn too_large() -> Response {
    error(StatusCode::PAYLOAD_TOO_LARGE, ErrorBody::new(format!("query exceeds {MAX_QUERY_BYTES} bytes")))
}

async fn run_query(state: EndpointState, text: String, headers: &HeaderMap) -> Response {
    if text.len() > MAX_QUERY_BYTES {
        return too_large();
    }
    let accept = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok());
    let Some(format) = negotiate(accept) else {
        let supported = [ResultFormat::Json, ResultFormat::Xml, ResultFormat::Tsv].map(|f| f.media_type()).join(", ");
        return error(StatusCode::NOT_ACCEPTABLE, ErrorBody::new(format!("no acceptable result format; supported: {supported}")));
    };
    let corpus = state.corpus.clone();
    let outcome = tokio::task::spawn_blocking(move || {
        let ast = parse_query_with(&text, &corpus.prefixes)?;
        let solutions = evaluate(&ast, &corpus.store);
        Ok::<_, qkb_core::ParseError>(serialize_results(&solutions, format, &ast.prefixes))
    })
    .await;
    match outcome {
        Ok(Ok(body)) => {
            let mut response = body.into_response();
            let headers = response.headers_mut();
            headers.insert(header::CONTENT_TYPE, HeaderValue::from_static(format.media_type()));
            headers.insert(header::VARY, HeaderValue::from_static("Accept"));
            response
        }
        Ok(Err(parse)) => error(StatusCode::BAD_REQUEST, ErrorBody::from(&parse)),
        Err(join) => error(StatusCode::INTERNAL_SERVER_ERROR, ErrorBody::new(format!("query evaluation failed: {join}"))),
    }
}

async fn schema(State(state): State<EndpointState>) -> Response {
    Json(state.corpus.schema_tree()).into_response()
}

#[derive(serde::Deserialize)]
struct ConceptParams {
    class: Option<String>,
}

/// Accepts a prefixed name or a full IRI.
fn resolve_class(corpus: &Corpus, name: &str) -> Option<Iri> {
    let iri = corpus.prefixes.expand(name).ok().or_else(|| Iri::new(name.trim_start_matches('<').trim_end_matches('>')).ok())?;
    corpus.schema.classes.contains(&iri).then_some(iri)
}

async fn concepts(State(state): State<EndpointState>, Query(params): Query<ConceptParams>) -> Response {
    let Some(name) = params.class else {
        return error(StatusCode::BAD_REQUEST, ErrorBody::new("missing `class` parameter"));
    };
    let Some(class) = resolve_class(&state.corpus, &name) else {
        return error(StatusCode::BAD_REQUEST, ErrorBody::new(format!("unknown class `{name}`")));
    };
    let instances =
        state.corpus.instances_of(&class).into_iter().map(|iri| Concept { label: state.corpus.label(&iri), iri }).collect();
    Json(ConceptList { class, instances }).into_response()
}

async fn list_queries(State(state): State<EndpointState>) -> Response {
    let list: Vec<CannedQuery> =
        state.queries.iter().map(|(name, query)| CannedQuery { name: name.clone(), query: query.clone() }).collect();
    Json(list).into_response()
}

async fn one_query(State(state): State<EndpointState>, Path(name): Path<String>) -> Response {
    match state.queries.get(&name) {
        Some(query) => Json(CannedQuery { name, query: query.clone() }).into_response(),
        None => error(StatusCode::NOT_FOUND, ErrorBody::new(format!("no canned query named `{name}`"))),
    }
}

async fn placeholder() -> Html<&'static str> {
    Html(concat!(
        "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>qkb</title></head>\n",
        "<body><h1>qkb SPARQL endpoint</h1>\n",
        "<p>No UI assets are installed. Query with <code>GET /sparql?query=…</code> or ",
        "<code>POST /sparql</code>; browse <a href=\"/schema\">/schema</a> and <a href=\"/queries\">/queries</a>.</p>\n",
        "</body></html>\n"
    ))
}
