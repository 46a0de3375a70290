use std::path::PathBuf;
use std::time::Instant;

use qkb_core::corpus::{self, load_corpus, load_queries, CorpusError, LoadOptions};
use qkb_core::model::vocab::{self, qreg};
use qkb_core::sparql::{evaluate, parse_query_with};
use qkb_core::{Term, Triple};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data_dir() -> PathBuf {
    root().join("data")
}

fn load() -> corpus::Corpus {
    load_corpus(&data_dir(), LoadOptions::default()).unwrap()
}

#[test]
fn loads_quickly_and_meets_size_floor() {
    let start = Instant::now();
    let c = load();
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert!(c.schema.classes.len() >= 15, "{} classes", c.schema.classes.len());
    assert!(c.schema.object_properties.len() >= 7);
    assert!(c.verses().len() >= 10);
    assert!(c.warnings.is_empty(), "{:?}", c.warnings);
}

#[test]
fn corpus_is_valid() {
    let c = load();
    let report = c.validate();
    assert!(report.is_empty(), "{report}");
    let raw = load_corpus(&data_dir(), LoadOptions { materialize: false, ..Default::default() }).unwrap();
    let report = raw.validate();
    assert!(report.is_empty(), "{report}");
}

#[test]
fn schema_tree_has_expected_shape() {
    let c = load();
    let tree = c.schema_tree();
    let roots: Vec<String> = tree.iter().map(|n| c.prefixes.compact(&n.iri)).collect();
    assert_eq!(roots, ["qreg:Allah", "qreg:City", "qreg:HolyBook", "qreg:QuranicNature", "qreg:QuranVerse"]);
    let nature = &tree[3];
    assert_eq!(nature.children.len(), 10);
    let astro = nature.children.iter().find(|n| n.iri == qreg("AstronomicalBodies")).unwrap();
    assert_eq!(astro.label, "Astronomical Bodies");
}

#[test]
fn materialization_adds_inverses_and_types() {
    let c = load();
    assert!(c.materialized.is_some());
    assert!(c.store.contains(&Triple::new(qreg("Sea"), qreg("isPartOf"), qreg("2:50"))));
    let ty = vocab::iri(vocab::RDF_TYPE);
    assert!(c.store.contains(&Triple::new(qreg("Sea"), ty.clone(), qreg("QuranicNature"))));
    assert!(c.store.contains(&Triple::new(qreg("Fish"), ty, qreg("LivingBeing"))));
    assert!(c.store.audit_indexes());
}

#[test]
fn instances_follow_subclasses_without_materialization() {
    let raw = load_corpus(&data_dir(), LoadOptions { materialize: false, ..Default::default() }).unwrap();
    let living = raw.instances_of(&qreg("LivingBeing"));
    assert!(living.contains(&qreg("Fish")) && living.contains(&qreg("Yunus")));
    assert_eq!(raw.instances_of(&qreg("LivingBeing")), load().instances_of(&qreg("LivingBeing")));
}

#[test]
fn verse_records_and_extension_flags() {
    let c = load();
    let verses = c.verses();
    let find = |id: &str| verses.iter().find(|v| v.iri == qreg(id)).unwrap();
    assert_eq!((find("37:142").chapter, find("37:142").verse), (37, 142));
    assert_eq!(find("37:142").text.as_deref(), Some("Then the fish swallowed him, while he was blameworthy."));
    for id in ["2:29", "2:30", "2:22", "37:142", "2:107"] {
        assert!(find(id).extension, "{id} should be flagged");
    }
    assert!(!find("2:50").extension);
    assert!(c.is_extension(&Triple::new(qreg("Allah"), qreg("saved"), qreg("ChildrenOfIsrael"))));
    assert!(!c.is_extension(&Triple::new(qreg("Allah"), qreg("parted"), qreg("Sea"))));
    let text = find("2:50").text.clone().unwrap();
    assert!(text.starts_with("And [recall] when we parted the sea"));
}

#[test]
fn verse_texts_agree_with_published_prefixes() {
    // Truncated texts as displayed for the earth query results.
    let shown = [
        ("2:107", "Do you not know that to Allah bel"),
        ("2:29", "It is He who created for you all of"),
        ("2:116", "They say, \" Allah has taken a son"),
        ("2:164", "Indeed, in the creation of the hea"),
        ("2:30", "And [mention, O Muhammad], wh"),
        ("2:22", "He who made for you the earth a"),
        ("2:61", "And [recall] when you said, \"O M"),
        ("2:117", "Originator of the heavens and the"),
    ];
    let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    let c = load();
    let verses = c.verses();
    for (id, prefix) in shown {
        let v = verses.iter().find(|v| v.iri == qreg(id)).unwrap();
        let text = v.text.as_deref().unwrap();
        assert!(squash(text).starts_with(&squash(prefix)), "{id}: {text}");
        assert!(v.concepts.contains(&qreg("Allah")) && v.concepts.contains(&qreg("Earth")));
    }
    assert!(corpus::check_mentions(&c.store).is_empty());
}

#[test]
fn canned_queries_answer_as_expected() {
    let c = load();
    let queries = load_queries(&root().join("queries")).unwrap();
    assert_eq!(queries.len(), 6);
    let run = |name: &str| evaluate(&parse_query_with(&queries[name], &c.prefixes).unwrap(), &c.store);

    let q1 = run("q1");
    assert_eq!(q1.rows.len(), 1);
    assert_eq!(q1.rows[0].get_name("Answer"), Some(&Term::Iri(qreg("Sea"))));

    let q2 = run("q2");
    let mut verses: Vec<&Term> = q2.rows.iter().map(|r| r.get_name("AyatNo").unwrap()).collect();
    verses.sort();
    assert_eq!(verses, [&Term::Iri(qreg("2:63")), &Term::Iri(qreg("2:93"))]);
    for r in &q2.rows {
        let text = r.get_name("Ayat").and_then(Term::literal_text).unwrap();
        assert!(text.starts_with("And [recall] when We took your covenant"));
    }

    let q3 = run("q3_fixed");
    assert!(q3.rows.len() >= 8);
    assert!(q3.rows.iter().all(|r| r.get_name("Ayat").is_some_and(Term::is_literal)));
    assert_eq!(run("q3").rows, q3.rows);

    let verbatim = run("q3_verbatim");
    assert!(verbatim.rows.iter().all(|r| r.get_name("Ayat").is_some_and(|t| !t.is_literal())));

    let q4 = run("q4");
    assert_eq!(q4.rows.len(), 1);
    assert_eq!(q4.rows[0].get_name("Answer"), Some(&Term::Iri(qreg("Fish"))));
}

#[test]
fn checksum_mismatch_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["manifest", "schema.ttl", "verses.ttl", "facts.ttl"] {
        std::fs::copy(data_dir().join(f), dir.path().join(f)).unwrap();
    }
    let facts = dir.path().join("facts.ttl");
    let mut text = std::fs::read_to_string(&facts).unwrap();
    text.push_str("qreg:Sea a qreg:Landscape .\n");
    std::fs::write(&facts, text).unwrap();
    match load_corpus(dir.path(), LoadOptions::default()) {
        Err(CorpusError::Checksum { path, .. }) => assert!(path.ends_with("facts.ttl")),
        other => panic!("expected checksum error, got {other:?}"),
    }
    assert!(load_corpus(dir.path(), LoadOptions { skip_checksums: true, ..Default::default() }).is_ok());
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data_dir().join("schema.ttl"), dir.path().join("schema.ttl")).unwrap();
    std::fs::write(dir.path().join("facts.ttl"), "@prefix qreg: <http://x.org/#> .\nqreg:a qreg:b _:c .\n").unwrap();
    std::fs::write(
        dir.path().join("manifest"),
        format!(
            "file=schema.ttl role=schema sha256={}\nfile=facts.ttl role=facts sha256=0000000000000000000000000000000000000000000000000000000000000000\n",
            corpus::sha256_hex(std::fs::read_to_string(data_dir().join("schema.ttl")).unwrap().as_bytes())
        ),
    )
    .unwrap();
    let err = load_corpus(dir.path(), LoadOptions { skip_checksums: true, ..Default::default() }).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("facts.ttl: line 2, column"), "{msg}");
}

#[test]
fn validator_flags_broken_verses() {
    let c = load_corpus(&data_dir(), LoadOptions { materialize: false, ..Default::default() }).unwrap();
    let mut store = c.store.thaw();
    store.insert_asserted(Triple::new(qreg("Chapter2"), qreg("hasPart"), qreg("Nothing")));
    store.insert_asserted(Triple::new(qreg("2:50"), vocab::iri(vocab::RDFS_COMMENT), Term::plain("second text")));
    let report = corpus::validate_corpus(&store, &c.schema);
    let rules: Vec<&str> = report.findings().iter().map(|f| f.rule.as_str()).collect();
    for rule in ["corpus/verse-type", "corpus/concept-type", "corpus/verse-id", "corpus/untyped", "corpus/verse-text"] {
        assert!(rules.contains(&rule), "missing {rule} in {rules:?}");
    }
}
