use proptest::prelude::*;
use qkb_core::model::{PatternTerm, TriplePattern};
use qkb_core::{Store, Term, Triple};
use qkb_testkit::gen::{self, random_triples};
use qkb_testkit::oracle::naive_find;
use rand::Rng;

fn build(triples: &[Triple]) -> Store {
    let mut store = Store::new();
    for t in triples {
        store.insert_asserted(t.clone());
    }
    store
}

fn sorted(mut v: Vec<Triple>) -> Vec<Triple> {
    v.sort();
    v
}

#[test]
fn every_access_path_agrees_with_a_scan() {
    for seed in 0..60 {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(0..=200);
        let mut triples = random_triples(&mut rng, n, 8, 4);
        let store = build(&triples);
        triples.sort();
        triples.dedup();
        assert_eq!(store.len(), triples.len());

        // probe terms: present ones plus one that never occurs
        let mut probes_s: Vec<Term> = triples.iter().map(|t| Term::Iri(t.subject.clone())).collect();
        let mut probes_p: Vec<Term> = triples.iter().map(|t| Term::Iri(t.predicate.clone())).collect();
        let mut probes_o: Vec<Term> = triples.iter().map(|t| t.object.clone()).collect();
        for probes in [&mut probes_s, &mut probes_p, &mut probes_o] {
            probes.push(Term::Iri(gen::iri("absent")));
        }
        for _ in 0..40 {
            for mask in 0..8u8 {
                let pick = |probes: &[Term], rng: &mut rand::rngs::StdRng| probes[rng.random_range(0..probes.len())].clone();
                let s = (mask & 4 != 0).then(|| pick(&probes_s, &mut rng));
                let p = (mask & 2 != 0).then(|| pick(&probes_p, &mut rng));
                let o = (mask & 1 != 0).then(|| pick(&probes_o, &mut rng));
                let got = sorted(store.find(s.as_ref(), p.as_ref(), o.as_ref()));
                let want = sorted(naive_find(&triples, s.as_ref(), p.as_ref(), o.as_ref()));
                assert_eq!(got, want, "seed {seed} mask {mask:03b}");
            }
        }
    }
}

#[test]
fn repeated_variables_constrain_matches() {
    let mut rng = gen::rng(7);
    let triples = random_triples(&mut rng, 150, 4, 2);
    let store = build(&triples);
    let pattern = TriplePattern::new(PatternTerm::var("x"), PatternTerm::Term(Term::Iri(gen::iri("p0"))), PatternTerm::var("x"));
    let got = store.match_pattern(&pattern).len();
    let mut want: Vec<&Triple> =
        triples.iter().filter(|t| t.predicate == gen::iri("p0") && t.object == Term::Iri(t.subject.clone())).collect();
    want.sort();
    want.dedup();
    assert_eq!(got, want.len());
    assert!(got > 0);
}

#[test]
fn indexes_stay_consistent_after_many_inserts() {
    let mut rng = gen::rng(99);
    let mut store = Store::new();
    for t in random_triples(&mut rng, 1000, 30, 6) {
        store.insert_asserted(t);
    }
    assert!(store.audit_indexes());
    let frozen = store.freeze();
    assert!(frozen.audit_indexes());
}

proptest! {
    #[test]
    fn insert_is_idempotent(seed in any::<u64>(), n in 0usize..120) {
        let mut rng = gen::rng(seed);
        let triples = random_triples(&mut rng, n, 5, 3);
        let mut store = build(&triples);
        let before = store.len();
        for t in &triples {
            prop_assert!(!store.insert_asserted(t.clone()));
        }
        prop_assert_eq!(store.len(), before);
        prop_assert!(store.audit_indexes());
    }
}
