//! SPARQL 1.1 query results in JSON, XML and TSV.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{escape_string, Iri, PrefixMap, Term, Variable};
use crate::store::BindingSet;

use super::SolutionSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResultFormat {
    Json,
    Xml,
    Tsv,
}

impl ResultFormat {
    pub fn media_type(self) -> &'static str {
        match self {
            ResultFormat::Json => "application/sparql-results+json",
            ResultFormat::Xml => "application/sparql-results+xml",
            ResultFormat::Tsv => "text/tab-separated-values",
        }
    }

    /// Exact media type match, ignoring parameters such as `charset`.
    pub fn from_media_type(media: &str) -> Option<Self> {
        let essence = media.split(';').next().unwrap_or("").trim().to_ascii_lowercase();
        [ResultFormat::Json, ResultFormat::Xml, ResultFormat::Tsv].into_iter().find(|f| f.media_type() == essence)
    }
}

impl FromStr for ResultFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ResultFormat::Json),
            "xml" => Ok(ResultFormat::Xml),
            "tsv" => Ok(ResultFormat::Tsv),
            other => Err(format!("unknown result format `{other}` (expected json, xml or tsv)")),
        }
    }
}

/// Renders `solutions`. IRIs are written in full in JSON and XML and
/// compacted with `prefixes` in TSV.
pub fn serialize_results(solutions: &SolutionSequence, format: ResultFormat, prefixes: &PrefixMap) -> String {
    match format {
        ResultFormat::Json => to_json(solutions),
        ResultFormat::Xml => to_xml(solutions),
        ResultFormat::Tsv => to_tsv(solutions, prefixes),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDocument {
    head: JsonHead,
    results: JsonResults,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonHead {
    vars: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonResults {
    bindings: Vec<BTreeMap<String, JsonTerm>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTerm {
    #[serde(rename = "type")]
    kind: String,
    value: String,
    #[serde(rename = "xml:lang", skip_serializing_if = "Option::is_none", default)]
    lang: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    datatype: Option<String>,
}

impl From<&Term> for JsonTerm {
    fn from(term: &Term) -> Self {
        let (kind, value, lang, datatype) = match term {
            Term::Iri(iri) => ("uri", iri.as_str().to_string(), None, None),
            Term::Plain(text) => ("literal", text.clone(), None, None),
            Term::Lang { text, lang } => ("literal", text.clone(), Some(lang.clone()), None),
            Term::Typed { text, datatype } => ("literal", text.clone(), None, Some(datatype.as_str().to_string())),
        };
        JsonTerm { kind: kind.to_string(), value, lang, datatype }
    }
}

fn to_json(solutions: &SolutionSequence) -> String {
    let doc = JsonDocument {
        head: JsonHead { vars: solutions.vars.iter().map(|v| v.name().to_string()).collect() },
        results: JsonResults {
            bindings: solutions
                .rows
                .iter()
                .map(|row| row.iter().map(|(v, t)| (v.name().to_string(), JsonTerm::from(t))).collect())
                .collect(),
        },
    };
    serde_json::to_string(&doc).expect("result documents always serialize")
}

#[derive(Debug, Error)]
pub enum ResultsParseError {
    #[error("malformed results document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid term in results: {0}")]
    Term(String),
}

/// Reads a SPARQL JSON results document back into solutions.
pub fn parse_json_results(text: &str) -> Result<SolutionSequence, ResultsParseError> {
    let doc: JsonDocument = serde_json::from_str(text)?;
    let var = |name: &str| Variable::new(name).map_err(|e| ResultsParseError::Term(e.to_string()));
    let vars = doc.head.vars.iter().map(|v| var(v)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(doc.results.bindings.len());
    for binding in doc.results.bindings {
        let mut row = BindingSet::new();
        for (name, jt) in binding {
            let term = match (jt.kind.as_str(), jt.lang, jt.datatype) {
                ("uri", _, _) => Term::Iri(Iri::new(jt.value).map_err(|e| ResultsParseError::Term(e.to_string()))?),
                ("literal" | "typed-literal", Some(lang), _) => {
                    Term::lang(jt.value, lang).map_err(|e| ResultsParseError::Term(e.to_string()))?
                }
                ("literal" | "typed-literal", None, Some(dt)) => {
                    Term::typed(jt.value, Iri::new(dt).map_err(|e| ResultsParseError::Term(e.to_string()))?)
                }
                ("literal", None, None) => Term::Plain(jt.value),
                (other, _, _) => return Err(ResultsParseError::Term(format!("unsupported term type `{other}`"))),
            };
            row.bind(var(&name)?, term);
        }
        rows.push(row);
    }
    Ok(SolutionSequence { vars, rows })
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn to_xml(solutions: &SolutionSequence) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\"?>\n<sparql xmlns=\"http://www.w3.org/2005/sparql-results#\">\n  <head>\n");
    for v in &solutions.vars {
        writeln!(out, "    <variable name=\"{}\"/>", xml_escape(v.name())).unwrap();
    }
    out.push_str("  </head>\n  <results>\n");
    for row in &solutions.rows {
        out.push_str("    <result>\n");
        for (v, t) in row.iter() {
            write!(out, "      <binding name=\"{}\">", xml_escape(v.name())).unwrap();
            match t {
                Term::Iri(iri) => write!(out, "<uri>{}</uri>", xml_escape(iri.as_str())),
                Term::Plain(text) => write!(out, "<literal>{}</literal>", xml_escape(text)),
                Term::Lang { text, lang } => {
                    write!(out, "<literal xml:lang=\"{}\">{}</literal>", xml_escape(lang), xml_escape(text))
                }
                Term::Typed { text, datatype } => write!(
                    out,
                    "<literal datatype=\"{}\">{}</literal>",
                    xml_escape(datatype.as_str()),
                    xml_escape(text)
                ),
            }
            .unwrap();
            out.push_str("</binding>\n");
        }
        out.push_str("    </result>\n");
    }
    out.push_str("  </results>\n</sparql>\n");
    out
}

/// Compact single-cell rendering: prefixed names for IRIs, quoted and
/// escaped literals.
pub fn render_term(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => prefixes.compact(iri),
        Term::Plain(text) => format!("\"{}\"", escape_string(text)),
        Term::Lang { text, lang } => format!("\"{}\"@{lang}", escape_string(text)),
        Term::Typed { text, datatype } => format!("\"{}\"^^{}", escape_string(text), prefixes.compact(datatype)),
    }
}

fn to_tsv(solutions: &SolutionSequence, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    let header: Vec<String> = solutions.vars.iter().map(ToString::to_string).collect();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for row in &solutions.rows {
        let cells: Vec<String> =
            solutions.vars.iter().map(|v| row.get(v).map(|t| render_term(t, prefixes)).unwrap_or_default()).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}
