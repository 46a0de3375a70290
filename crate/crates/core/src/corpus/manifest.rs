use std::fmt;
use std::str::FromStr;

use crate::model::{Iri, PrefixMap, Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FileRole {
    Schema,
    Verses,
    Facts,
}

impl FromStr for FileRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "schema" => Ok(FileRole::Schema),
            "verses" => Ok(FileRole::Verses),
            "facts" => Ok(FileRole::Facts),
            other => Err(format!("unknown role `{other}` (expected schema, verses or facts)")),
        }
    }
}

impl fmt::Display for FileRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FileRole::Schema => "schema",
            FileRole::Verses => "verses",
            FileRole::Facts => "facts",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    /// Relative to the manifest's directory.
    pub path: String,
    pub role: FileRole,
    /// Lowercase hex SHA-256 of the file contents.
    pub sha256: String,
}

/// Pattern over curated triples. `None` positions match anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFlag {
    pub subject: Iri,
    pub predicate: Option<Iri>,
    pub object: Option<Term>,
}

impl ExtensionFlag {
    pub fn matches(&self, triple: &Triple) -> bool {
        self.subject == triple.subject
            && self.predicate.as_ref().is_none_or(|p| *p == triple.predicate)
            && self.object.as_ref().is_none_or(|o| *o == triple.object)
    }
}

/// Lists the corpus files with their checksums and flags the triples that
/// were curated beyond the published ontology.
///
/// ```text
/// file=schema.ttl role=schema sha256=…
/// extension=qreg:Sea
/// extension=qreg:2:164 qreg:hasPart qreg:Sea
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CuratedDatasetManifest {
    pub files: Vec<ManifestEntry>,
    pub extensions: Vec<ExtensionFlag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}

impl CuratedDatasetManifest {
    /// Parses manifest text. Extension terms are prefixed names resolved
    /// with `prefixes`.
    pub fn parse(text: &str, prefixes: &PrefixMap) -> Result<Self, ManifestError> {
        let mut manifest = CuratedDatasetManifest::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| ManifestError { line, message };
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if let Some(rest) = content.strip_prefix("extension=") {
                let terms: Vec<&str> = rest.split_whitespace().collect();
                if terms.is_empty() || terms.len() > 3 {
                    return Err(err(format!("extension needs 1 to 3 terms, found {}", terms.len())));
                }
                let expand = |name: &str| prefixes.expand(name).map_err(|e| err(e.to_string()));
                manifest.extensions.push(ExtensionFlag {
                    subject: expand(terms[0])?,
                    predicate: terms.get(1).map(|t| expand(t)).transpose()?,
                    object: terms.get(2).map(|t| expand(t).map(Term::Iri)).transpose()?,
                });
                continue;
            }
            let (mut path, mut role, mut sha256) = (None, None, None);
            for field in content.split_whitespace() {
                let (key, value) = field.split_once('=').ok_or_else(|| err(format!("expected key=value, found `{field}`")))?;
                match key {
                    "file" => path = Some(value.to_string()),
                    "role" => role = Some(value.parse::<FileRole>().map_err(err)?),
                    "sha256" => {
                        if value.len() != 64 || !value.bytes().all(|b| b.is_ascii_hexdigit()) {
                            return Err(err(format!("malformed sha256 `{value}`")));
                        }
                        sha256 = Some(value.to_ascii_lowercase());
                    }
                    other => return Err(err(format!("unknown key `{other}`"))),
                }
            }
            match (path, role, sha256) {
                (Some(path), Some(role), Some(sha256)) => manifest.files.push(ManifestEntry { path, role, sha256 }),
                _ => return Err(err("file entries need file=, role= and sha256=".to_string())),
            }
        }
        Ok(manifest)
    }

    pub fn is_extension(&self, triple: &Triple) -> bool {
        self.extensions.iter().any(|flag| flag.matches(triple))
    }
}
