//! Async client for a running qkb endpoint (plain HTTP).

use qkb_core::api::{CannedQuery, ClassNode, ConceptList, ErrorBody, SPARQL_QUERY_MEDIA_TYPE};
use qkb_core::sparql::{parse_json_results, ResultFormat, ResultsParseError, SolutionSequence};
use reqwest::header::{ACCEPT, CONTENT_TYPE};
use reqwest::{Response, StatusCode};
use serde::de::DeserializeOwned;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("request to {url} failed: {source}")]
    Transport { url: String, source: reqwest::Error },
    /// The endpoint rejected the query text; carries its position.
    #[error("{}", .0.error)]
    Query(ErrorBody),
    #[error("endpoint returned {status}: {message}")]
    Status { status: StatusCode, message: String },
    #[error(transparent)]
    Results(#[from] ResultsParseError),
    #[error("malformed response from {url}: {message}")]
    Decode { url: String, message: String },
}

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base_url` is the endpoint root, e.g. `http://127.0.0.1:7878`.
    pub fn new(base_url: impl Into<String>) -> Self {
        let base = base_url.into().trim_end_matches('/').to_string();
        Client { base, http: reqwest::Client::new() }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    /// Runs `query` and returns the response body in `format` unchanged.
    pub async fn query_raw(&self, query: &str, format: ResultFormat) -> Result<String, ClientError> {
        let url = self.url("/sparql");
        let resp = self
            .http
            .post(&url)
            .header(CONTENT_TYPE, SPARQL_QUERY_MEDIA_TYPE)
            .header(ACCEPT, format.media_type())
            .body(query.to_string())
            .send()
            .await
            .map_err(|source| ClientError::Transport { url: url.clone(), source })?;
        let resp = check(resp, &url).await?;
        resp.text().await.map_err(|source| ClientError::Transport { url, source })
    }

    pub async fn select(&self, query: &str) -> Result<SolutionSequence, ClientError> {
        let body = self.query_raw(query, ResultFormat::Json).await?;
        Ok(parse_json_results(&body)?)
    }

    pub async fn schema(&self) -> Result<Vec<ClassNode>, ClientError> {
        self.get_json("/schema", &[]).await
    }

    /// `class` may be a prefixed name or a full IRI.
    pub async fn concepts(&self, class: &str) -> Result<ConceptList, ClientError> {
        self.get_json("/concepts", &[("class", class)]).await
    }

    pub async fn queries(&self) -> Result<Vec<CannedQuery>, ClientError> {
        self.get_json("/queries", &[]).await
    }

    pub async fn canned_query(&self, name: &str) -> Result<CannedQuery, ClientError> {
        self.get_json(&format!("/queries/{name}"), &[]).await
    }

    async fn get_json<T: DeserializeOwned>(&self, path: &str, params: &[(&str, &str)]) -> Result<T, ClientError> {
        let url = self.url(path);
        let resp = self
            .http
            .get(&url)
            .query(params)
            .send()
            .await
            .map_err(|source| ClientError::Transport { url: url.clone(), source })?;
        let resp = check(resp, &url).await?;
        resp.json().await.map_err(|e| ClientError::Decode { url, message: e.to_string() })
    }
}

async fn check(resp: Response, url: &str) -> Result<Response, ClientError> {
    let status = resp.status();
    if status.is_success() {
        return Ok(resp);
    }
    let text = resp.text().await.unwrap_or_default();
    match serde_json::from_str::<ErrorBody>(&text) {
        Ok(body) if status == StatusCode::BAD_REQUEST && body.line.is_some() => Err(ClientError::Query(body)),
        Ok(body) => Err(ClientError::Status { status, message: body.error }),
        Err(_) if text.is_empty() => Err(ClientError::Status { status, message: format!("no body from {url}") }),
        Err(_) => Err(ClientError::Status { status, message: text }),
    }
}
