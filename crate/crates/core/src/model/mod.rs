//! RDF data model: terms, triples, patterns, prefix maps and the
//! ontology schema derived from them.

mod prefix;
mod schema;
mod term;
pub mod vocab;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use prefix::{is_pn_chars, is_pn_chars_base, is_pn_chars_u, is_pn_local, is_pn_prefix, PrefixMap};
pub use schema::{find_subclass_cycles, InversePair, Schema};
pub use term::{escape_string, is_valid_lang_tag, Iri, PatternTerm, Term, Triple, TriplePattern, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid IRI: {0:?}")]
    InvalidIri(String),
    #[error("invalid language tag: {0:?}")]
    InvalidLangTag(String),
    #[error("invalid variable name: {0:?}")]
    InvalidVariable(String),
    #[error("unknown prefix: {0:?}")]
    UnknownPrefix(String),
    #[error("malformed prefixed name: {0:?}")]
    MalformedName(String),
}

/// One violated rule in a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    /// Stable identifier of the violated rule, e.g. `schema/cycle`.
    pub rule: String,
    pub subject: Option<Iri>,
    pub message: String,
}

impl Finding {
    pub fn new(rule: &str, subject: Option<Iri>, message: impl Into<String>) -> Self {
        Finding { rule: rule.to_string(), subject, message: message.into() }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.message)
    }
}

impl Serialize for Iri {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> serde::Deserialize<'de> for Iri {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = String::deserialize(deserializer)?;
        Iri::new(value).map_err(serde::de::Error::custom)
    }
}

/// Findings from a validation pass; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}
