//! JSON bodies exchanged with the HTTP endpoint, shared by server and
//! client.

use serde::{Deserialize, Serialize};

use crate::model::Iri;
use crate::syntax::ParseError;

pub use crate::corpus::ClassNode;

/// Largest accepted query text, in bytes.
pub const MAX_QUERY_BYTES: usize = 64 * 1024;

pub const SPARQL_QUERY_MEDIA_TYPE: &str = "application/sparql-query";
pub const FORM_MEDIA_TYPE: &str = "application/x-www-form-urlencoded";

/// Error body. `line` and `column` are set for query syntax errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub column: Option<usize>,
}

impl ErrorBody {
    pub fn new(error: impl Into<String>) -> Self {
        ErrorBody { error: error.into(), line: None, column: None }
    }
}

impl From<&ParseError> for ErrorBody {
    fn from(e: &ParseError) -> Self {
        ErrorBody { error: e.to_string(), line: Some(e.line), column: Some(e.column) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concept {
    pub iri: Iri,
    pub label: String,
}

/// `GET /concepts?class=…`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptList {
    pub class: Iri,
    pub instances: Vec<Concept>,
}

/// An entry of `GET /queries`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CannedQuery {
    pub name: String,
    pub query: String,
}
