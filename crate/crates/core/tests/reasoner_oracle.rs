use std::collections::BTreeSet;

use qkb_core::model::vocab;
use qkb_core::reasoner::{explain, materialize_in_place};
use qkb_core::store::Provenance;
use qkb_core::{Store, Term, Triple};
use qkb_testkit::gen::{self, OntologyInstance};
use qkb_testkit::oracle::naive_closure;

fn closure(triples: &[Triple]) -> (Store, usize) {
    let mut store = Store::new();
    for t in triples {
        store.insert_asserted(t.clone());
    }
    let schema = qkb_core::Schema::from_triples(triples);
    let stats = materialize_in_place(&mut store, &schema).unwrap();
    (store, stats.rounds)
}

#[test]
fn semi_naive_matches_naive_fixpoint() {
    for seed in 0..150 {
        let inst = OntologyInstance::generate(&mut gen::rng(seed));
        let (store, _) = closure(&inst.triples);
        let got: BTreeSet<Triple> = store.triples().into_iter().collect();
        let want = naive_closure(&inst.triples);
        assert_eq!(got, want, "seed {seed}");
        assert!(store.audit_indexes());
    }
}

#[test]
fn inverse_completeness() {
    let inv = vocab::iri(vocab::OWL_INVERSE_OF);
    for seed in 0..100 {
        let inst = OntologyInstance::generate(&mut gen::rng(seed));
        let (store, _) = closure(&inst.triples);
        let schema = inst.schema();
        for t in store.triples() {
            let Some(o) = t.object.as_iri() else { continue };
            for pair in &schema.inverse_pairs {
                if let Some(q) = pair.inverse_of(&t.predicate) {
                    assert!(store.contains(&Triple::new(o.clone(), q.clone(), t.subject.clone())), "seed {seed}: {t}");
                }
            }
            if t.predicate == inv {
                assert!(store.contains(&Triple::new(o.clone(), inv.clone(), t.subject.clone())));
            }
        }
    }
}

#[test]
fn closure_is_monotone() {
    for seed in 0..60 {
        let mut rng = gen::rng(seed);
        let inst = OntologyInstance::generate(&mut rng);
        let cut = inst.triples.len() / 2;
        let (small, _) = closure(&inst.triples[..cut]);
        let (large, _) = closure(&inst.triples);
        for t in small.triples() {
            assert!(large.contains(&t), "seed {seed}: lost {t}");
        }
    }
}

#[test]
fn terminates_within_bounds() {
    for seed in 0..100 {
        let inst = OntologyInstance::generate(&mut gen::rng(seed));
        let (store, rounds) = closure(&inst.triples);
        let mut terms: BTreeSet<Term> = BTreeSet::new();
        for t in &inst.triples {
            terms.insert(Term::Iri(t.subject.clone()));
            terms.insert(Term::Iri(t.predicate.clone()));
            terms.insert(t.object.clone());
        }
        let n = terms.len();
        let predicates: BTreeSet<_> = store.triples().into_iter().map(|t| t.predicate).collect();
        assert!(store.len() <= inst.triples.len() + n * n * predicates.len());
        assert!(rounds <= store.inferred_count() + 1, "seed {seed}: {rounds} rounds");
        // a second pass finds nothing new
        let mut again = store.clone();
        let stats = materialize_in_place(&mut again, &inst.schema()).unwrap();
        assert_eq!(stats.inferred, 0);
    }
}

#[test]
fn every_inferred_triple_has_a_grounded_derivation() {
    for seed in 0..40 {
        let inst = OntologyInstance::generate(&mut gen::rng(seed));
        let (store, _) = closure(&inst.triples);
        for (t, prov) in store.iter() {
            let steps = explain(&store, &t).unwrap();
            match prov {
                Provenance::Asserted => assert!(steps.is_empty()),
                Provenance::Inferred { .. } => {
                    assert_eq!(steps.last().unwrap().conclusion, t);
                    let mut known: BTreeSet<Triple> = inst.triples.iter().cloned().collect();
                    for step in &steps {
                        for p in &step.premises {
                            assert!(known.contains(p), "seed {seed}: premise {p} used before it is derived");
                        }
                        known.insert(step.conclusion.clone());
                    }
                }
            }
        }
    }
}
