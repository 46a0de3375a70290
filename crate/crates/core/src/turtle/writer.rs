use std::collections::BTreeSet;
use std::fmt::Write;

use crate::model::{escape_string, vocab, PrefixMap, Term, Triple};

/// Writes `@prefix` lines followed by one statement per line, sorted by
/// the compacted subject, predicate and object. Duplicates are dropped.
pub fn serialize<'a>(triples: impl IntoIterator<Item = &'a Triple>, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        writeln!(out, "@prefix {label}: {ns} .").unwrap();
    }

    let lines: BTreeSet<(String, String, String)> = triples
        .into_iter()
        .map(|t| (prefixes.compact(&t.subject), prefixes.compact(&t.predicate), render_object(&t.object, prefixes)))
        .collect();
    if !lines.is_empty() && !prefixes.is_empty() {
        out.push('\n');
    }
    let rdf_type = prefixes.compact(&vocab::iri(vocab::RDF_TYPE));
    for (s, p, o) in &lines {
        let verb = if *p == rdf_type { "a" } else { p.as_str() };
        writeln!(out, "{s} {verb} {o} .").unwrap();
    }
    out
}

fn render_object(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => prefixes.compact(iri),
        Term::Plain(text) => format!("\"{}\"", escape_string(text)),
        Term::Lang { text, lang } => format!("\"{}\"@{lang}", escape_string(text)),
        Term::Typed { text, datatype } => format!("\"{}\"^^{}", escape_string(text), prefixes.compact(datatype)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::vocab::qreg;
    use crate::turtle::parse_document;

    #[test]
    fn empty_store_has_only_directives() {
        let text = serialize(&[], &vocab::corpus_prefixes());
        assert!(text.lines().all(|l| l.starts_with("@prefix")));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn one_statement_per_line() {
        let t = Triple::new(qreg("Allah"), qreg("parted"), qreg("Sea"));
        let text = serialize([&t], &vocab::corpus_prefixes());
        let statements: Vec<_> = text.lines().filter(|l| !l.starts_with("@prefix") && !l.is_empty()).collect();
        assert_eq!(statements, vec!["qreg:Allah qreg:parted qreg:Sea ."]);
    }

    #[test]
    fn rdf_type_written_as_a_and_reparsed() {
        let triples = vec![
            Triple::new(qreg("2:50"), vocab::iri(vocab::RDF_TYPE), qreg("QuranVerse")),
            Triple::new(qreg("2:50"), vocab::iri(vocab::RDFS_COMMENT), Term::plain("say \"x\"\n\ty\\")),
            Triple::new(qreg("2:50"), qreg("p"), Term::lang("t", "en-GB").unwrap()),
            Triple::new(qreg("2:50"), qreg("p"), Term::typed("1", vocab::iri(vocab::XSD_STRING))),
            Triple::new(qreg("2:50"), qreg("p"), crate::model::Iri::new("http://elsewhere/a/b").unwrap()),
        ];
        let text = serialize(&triples, &vocab::corpus_prefixes());
        assert!(text.contains("qreg:2:50 a qreg:QuranVerse ."));
        let reparsed = parse_document(&text).unwrap();
        let a: BTreeSet<_> = triples.iter().collect();
        let b: BTreeSet<_> = reparsed.triples.iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn output_is_sorted_and_deduplicated() {
        let x = Triple::new(qreg("b"), qreg("p"), qreg("o"));
        let y = Triple::new(qreg("a"), qreg("p"), qreg("o"));
        let text = serialize([&x, &y, &x], &vocab::corpus_prefixes());
        let statements: Vec<_> = text.lines().filter(|l| l.starts_with("qreg:")).collect();
        assert_eq!(statements, vec!["qreg:a qreg:p qreg:o .", "qreg:b qreg:p qreg:o ."]);
    }
}
