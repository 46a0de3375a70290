use std::collections::BTreeSet;

use crate::model::vocab::{self, qreg};
use crate::model::{Finding, Iri, Schema, Term, ValidationReport};
use crate::store::Store;

use super::verse_local_name;

/// Classes whose instances may be linked from a verse with `hasPart`.
const CONCEPT_ROOTS: [&str; 4] = ["QuranicNature", "Allah", "City", "HolyBook"];

/// Words that refer to Allah in the English verse texts, which often use a
/// capitalized pronoun instead of the name.
const DIVINE_REFERENCES: [&str; 7] = ["Allah", "He", "Him", "His", "We", "Lord", "Originator"];

/// Every class `subject` belongs to through its `rdf:type` assertions and
/// the subclass hierarchy.
pub fn types_of(store: &Store, schema: &Schema, subject: &Iri) -> BTreeSet<Iri> {
    let rdf_type = Term::Iri(vocab::iri(vocab::RDF_TYPE));
    let mut out = BTreeSet::new();
    for t in store.find(Some(&Term::Iri(subject.clone())), Some(&rdf_type), None) {
        if let Some(class) = t.object.as_iri() {
            out.extend(schema.superclasses_of(class));
        }
    }
    out
}

/// Verse individuals: anything typed as a verse or carrying `hasPart`.
pub fn verse_iris(store: &Store, schema: &Schema) -> BTreeSet<Iri> {
    let verse_class = qreg("QuranVerse");
    let rdf_type = Term::Iri(vocab::iri(vocab::RDF_TYPE));
    let mut out: BTreeSet<Iri> = store.find(None, Some(&Term::Iri(qreg("hasPart"))), None).into_iter().map(|t| t.subject).collect();
    for t in store.find(None, Some(&rdf_type), None) {
        if t.object.as_iri().is_some_and(|c| schema.superclasses_of(c).contains(&verse_class)) {
            out.insert(t.subject);
        }
    }
    out
}

/// Checks the corpus integrity rules on top of the schema closure check:
///
/// - `corpus/verse-type`: every `hasPart` subject is a `QuranVerse`
/// - `corpus/concept-type`: every `hasPart` object is a nature concept or an
///   instance of `Allah`, `City` or `HolyBook`
/// - `corpus/verse-id`: verse names have the form `chapter:verse`
/// - `corpus/untyped`: every individual has at least one `rdf:type`
/// - `corpus/verse-text`: every verse has exactly one `rdfs:comment`
/// - `corpus/mention`: a verse linked to `Earth` mentions it (and Allah)
pub fn validate_corpus(store: &Store, schema: &Schema) -> ValidationReport {
    let mut report = schema.closure_check();
    let has_part = Term::Iri(qreg("hasPart"));
    let rdf_type = Term::Iri(vocab::iri(vocab::RDF_TYPE));
    let comment = Term::Iri(vocab::iri(vocab::RDFS_COMMENT));
    let verse_class = qreg("QuranVerse");
    let concept_roots: Vec<Iri> = CONCEPT_ROOTS.iter().map(|c| qreg(c)).collect();

    let links = store.find(None, Some(&has_part), None);
    for t in &links {
        if !types_of(store, schema, &t.subject).contains(&verse_class) {
            report.push(Finding::new(
                "corpus/verse-type",
                Some(t.subject.clone()),
                format!("{} has parts but is not a QuranVerse", t.subject),
            ));
        }
        match t.object.as_iri() {
            Some(concept) => {
                let types = types_of(store, schema, concept);
                if !concept_roots.iter().any(|root| types.contains(root)) {
                    report.push(Finding::new(
                        "corpus/concept-type",
                        Some(concept.clone()),
                        format!("{concept} is linked from {} but is not typed under QuranicNature, Allah, City or HolyBook", t.subject),
                    ));
                }
            }
            None => report.push(Finding::new(
                "corpus/concept-type",
                Some(t.subject.clone()),
                format!("{} has a literal part {}", t.subject, t.object),
            )),
        }
    }

    let verses = verse_iris(store, schema);
    for verse in &verses {
        if !verse_local_name(verse).is_some_and(|local| super::parse_verse_id(local).is_some()) {
            report.push(Finding::new(
                "corpus/verse-id",
                Some(verse.clone()),
                format!("{verse} is not named chapter:verse in the ontology namespace"),
            ));
        }
        let texts = store.find(Some(&Term::Iri(verse.clone())), Some(&comment), None);
        if texts.len() != 1 || !texts[0].object.is_literal() {
            report.push(Finding::new(
                "corpus/verse-text",
                Some(verse.clone()),
                format!("{verse} has {} rdfs:comment values, expected exactly one literal", texts.len()),
            ));
        }
    }

    let mut individuals: BTreeSet<Iri> = verses.clone();
    for t in store.triples() {
        if schema.object_properties.contains(&t.predicate) {
            individuals.insert(t.subject.clone());
            if let Some(o) = t.object.as_iri() {
                individuals.insert(o.clone());
            }
        }
    }
    for individual in &individuals {
        if store.find(Some(&Term::Iri(individual.clone())), Some(&rdf_type), None).is_empty() {
            report.push(Finding::new("corpus/untyped", Some(individual.clone()), format!("{individual} has no rdf:type")));
        }
    }

    report.merge(check_mentions(store));
    report
}

/// Verses linked to `Earth` must contain "earth" and, if also linked to
/// `Allah`, name Allah or refer to Him by a capitalized pronoun or title.
pub fn check_mentions(store: &Store) -> ValidationReport {
    let mut report = ValidationReport::default();
    let has_part = Term::Iri(qreg("hasPart"));
    let comment = Term::Iri(vocab::iri(vocab::RDFS_COMMENT));
    let (allah, earth) = (Term::Iri(qreg("Allah")), Term::Iri(qreg("Earth")));
    for t in store.find(None, Some(&has_part), Some(&earth)) {
        let subject = Term::Iri(t.subject.clone());
        let texts = store.find(Some(&subject), Some(&comment), None);
        let Some(text) = texts.first().and_then(|c| c.object.literal_text()) else { continue };
        let mut missing = Vec::new();
        if !text.to_lowercase().contains("earth") {
            missing.push("the earth");
        }
        let names_allah = text.split(|c: char| !c.is_alphanumeric()).any(|w| DIVINE_REFERENCES.contains(&w));
        if !names_allah && !store.find(Some(&subject), Some(&has_part), Some(&allah)).is_empty() {
            missing.push("Allah");
        }
        if !missing.is_empty() {
            report.push(Finding::new(
                "corpus/mention",
                Some(t.subject.clone()),
                format!("{} is linked to {} but its text does not mention it", t.subject, missing.join(" or ")),
            ));
        }
    }
    report
}
