//! The shipped dataset: manifest-checked loading, verse records, the class
//! tree and the corpus integrity rules.

mod manifest;
mod validate;

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::vocab::{self, qreg};
use crate::model::{Iri, PrefixMap, Schema, Term, Triple, ValidationReport};
use crate::reasoner::{self, MaterializeStats};
use crate::store::{FrozenStore, Store};
use crate::syntax::ParseError;
use crate::turtle;

pub use manifest::{CuratedDatasetManifest, ExtensionFlag, FileRole, ManifestEntry, ManifestError};
pub use validate::{check_mentions, types_of, validate_corpus, verse_iris};

pub const MANIFEST_FILE: &str = "manifest";

/// Root classes in their conventional display order.
pub const TOP_LEVEL_CLASSES: [&str; 5] = ["Allah", "City", "HolyBook", "QuranicNature", "QuranVerse"];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{}: {}", path.display(), error.line, error.message)]
    Manifest { path: PathBuf, error: ManifestError },
    #[error("{}: checksum mismatch (manifest has {expected}, file hashes to {actual})", path.display())]
    Checksum { path: PathBuf, expected: String, actual: String },
    #[error("{}: {error}", path.display())]
    Parse { path: PathBuf, error: ParseError },
    #[error("schema is invalid:\n{0}")]
    Schema(ValidationReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub materialize: bool,
    /// Skip the manifest checksum comparison.
    pub skip_checksums: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { materialize: true, skip_checksums: false }
    }
}

/// A loaded, frozen corpus.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub store: FrozenStore,
    pub schema: Schema,
    /// Prefixes declared by the corpus files on top of the standard ones.
    pub prefixes: PrefixMap,
    pub manifest: CuratedDatasetManifest,
    /// `None` when loaded without materialization.
    pub materialized: Option<MaterializeStats>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerseRecord {
    pub iri: Iri,
    pub chapter: u32,
    pub verse: u32,
    pub text: Option<String>,
    pub concepts: Vec<Iri>,
    /// Any of the verse's own triples is a curated extension.
    pub extension: bool,
}

/// A class and its subclasses, for tree displays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNode {
    pub iri: Iri,
    pub label: String,
    pub children: Vec<ClassNode>,
}

/// Splits `2:50` into chapter and verse.
pub fn parse_verse_id(local: &str) -> Option<(u32, u32)> {
    let (chapter, verse) = local.split_once(':')?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(chapter) || !digits(verse) {
        return None;
    }
    Some((chapter.parse().ok()?, verse.parse().ok()?))
}

fn verse_local_name(iri: &Iri) -> Option<&str> {
    iri.as_str().strip_prefix(vocab::QREG)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

/// Loads the corpus described by `<data_dir>/manifest`: checks every file
/// against its checksum, parses it, derives the schema, optionally
/// materializes the closure and freezes the store.
pub fn load_corpus(data_dir: &Path, options: LoadOptions) -> Result<Corpus, CorpusError> {
    let manifest_path = data_dir.join(MANIFEST_FILE);
    let manifest_text = read(&manifest_path)?;
    let manifest = CuratedDatasetManifest::parse(&manifest_text, &vocab::corpus_prefixes())
        .map_err(|error| CorpusError::Manifest { path: manifest_path.clone(), error })?;

    let mut entries = manifest.files.clone();
    entries.sort_by_key(|e| e.role);
    let mut documents = Vec::with_capacity(entries.len());
    for entry in &entries {
        let path = data_dir.join(&entry.path);
        let text = read(&path)?;
        if !options.skip_checksums {
            let actual = sha256_hex(text.as_bytes());
            if actual != entry.sha256 {
                return Err(CorpusError::Checksum { path, expected: entry.sha256.clone(), actual });
            }
        }
        documents.push((path, text));
    }
    build_corpus(documents, manifest, options.materialize)
}

/// Builds a corpus from already-read Turtle documents.
pub fn build_corpus(
    documents: Vec<(PathBuf, String)>,
    manifest: CuratedDatasetManifest,
    materialize: bool,
) -> Result<Corpus, CorpusError> {
    let mut prefixes = vocab::corpus_prefixes();
    let mut warnings = Vec::new();
    let mut store = Store::new();
    for (path, text) in documents {
        let doc = turtle::parse_document(&text).map_err(|error| CorpusError::Parse { path: path.clone(), error })?;
        warnings.extend(doc.warnings.into_iter().map(|w| format!("{}: {w}", path.display())));
        prefixes.extend(&doc.prefixes);
        for t in doc.triples {
            store.insert_asserted(t);
        }
    }
    let schema = Schema::from_triples(&store.triples());
    let report = schema.closure_check();
    if !report.is_empty() {
        return Err(CorpusError::Schema(report));
    }
    let materialized = if materialize {
        Some(reasoner::materialize_in_place(&mut store, &schema).map_err(|e| match e {
            reasoner::ReasonerError::SchemaInvalid(r) => CorpusError::Schema(r),
            reasoner::ReasonerError::NotInStore(_) => unreachable!("materialization never explains"),
        })?)
    } else {
        None
    };
    Ok(Corpus { store: store.freeze(), schema, prefixes, manifest, materialized, warnings })
}

/// Reads every `*.rq` file in `dir`, keyed by file stem.
pub fn load_queries(dir: &Path) -> Result<BTreeMap<String, String>, CorpusError> {
    let io_err = |source| CorpusError::Io { path: dir.to_path_buf(), source };
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        if path.extension().is_some_and(|e| e == "rq") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                out.insert(stem.to_string(), read(&path)?);
            }
        }
    }
    Ok(out)
}

impl Corpus {
    pub fn load(data_dir: &Path, options: LoadOptions) -> Result<Corpus, CorpusError> {
        load_corpus(data_dir, options)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_corpus(&self.store, &self.schema)
    }

    pub fn is_extension(&self, triple: &Triple) -> bool {
        self.manifest.is_extension(triple)
    }

    pub fn asserted_triples(&self) -> Vec<Triple> {
        self.store.asserted_triples()
    }

    /// First `rdfs:label`, else the compact name.
    pub fn label(&self, iri: &Iri) -> String {
        let label = Term::Iri(vocab::iri(vocab::RDFS_LABEL));
        self.store
            .find(Some(&Term::Iri(iri.clone())), Some(&label), None)
            .first()
            .and_then(|t| t.object.literal_text().map(str::to_string))
            .unwrap_or_else(|| self.prefixes.compact(iri))
    }

    /// Verse records ordered by chapter and verse.
    pub fn verses(&self) -> Vec<VerseRecord> {
        let has_part = Term::Iri(qreg("hasPart"));
        let comment = Term::Iri(vocab::iri(vocab::RDFS_COMMENT));
        let mut out: Vec<VerseRecord> = verse_iris(&self.store, &self.schema)
            .into_iter()
            .filter_map(|iri| {
                let (chapter, verse) = verse_local_name(&iri).and_then(parse_verse_id)?;
                let subject = Term::Iri(iri.clone());
                let text =
                    self.store.find(Some(&subject), Some(&comment), None).first().and_then(|t| t.object.literal_text().map(str::to_string));
                let concepts =
                    self.store.find(Some(&subject), Some(&has_part), None).into_iter().filter_map(|t| t.object.as_iri().cloned()).collect();
                let extension = self.store.find(Some(&subject), None, None).iter().any(|t| self.is_extension(t));
                Some(VerseRecord { iri, chapter, verse, text, concepts, extension })
            })
            .collect();
        out.sort_by_key(|v| (v.chapter, v.verse));
        out
    }

    /// Instances of `class` or any of its subclasses, sorted.
    pub fn instances_of(&self, class: &Iri) -> Vec<Iri> {
        let rdf_type = Term::Iri(vocab::iri(vocab::RDF_TYPE));
        let mut out: Vec<Iri> = self
            .store
            .find(None, Some(&rdf_type), None)
            .into_iter()
            .filter(|t| t.object.as_iri().is_some_and(|c| self.schema.superclasses_of(c).contains(class)))
            .map(|t| t.subject)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The declared class hierarchy. Well-known roots come first in their
    /// usual order, other roots and all children are sorted by IRI.
    pub fn schema_tree(&self) -> Vec<ClassNode> {
        let children = self.schema.children();
        let mut roots = self.schema.root_classes();
        roots.sort_by_key(|r| {
            let rank = TOP_LEVEL_CLASSES.iter().position(|c| qreg(c) == **r).unwrap_or(TOP_LEVEL_CLASSES.len());
            (rank, (*r).clone())
        });
        roots.into_iter().map(|r| self.class_node(r, &children)).collect()
    }

    fn class_node(&self, class: &Iri, children: &BTreeMap<&Iri, Vec<&Iri>>) -> ClassNode {
        let mut kids: Vec<&Iri> = children.get(class).cloned().unwrap_or_default();
        kids.sort();
        ClassNode {
            iri: class.clone(),
            label: self.label(class),
            children: kids.into_iter().map(|k| self.class_node(k, children)).collect(),
        }
    }
}
