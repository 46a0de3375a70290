//! Reference implementations that trade every optimization for clarity.

use std::collections::{BTreeMap, BTreeSet};

use qkb_core::model::vocab;
use qkb_core::{Iri, Term, Triple};

use crate::gen::{QueryInstance, SelectShape, Slot};

/// Linear scan over `triples`.
pub fn naive_find(triples: &[Triple], s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> Vec<Triple> {
    triples
        .iter()
        .filter(|t| {
            s.is_none_or(|s| *s == Term::Iri(t.subject.clone()))
                && p.is_none_or(|p| *p == Term::Iri(t.predicate.clone()))
                && o.is_none_or(|o| *o == t.object)
        })
        .cloned()
        .collect()
}

/// Closure under the four inference rules by repeated full passes until
/// nothing changes.
pub fn naive_closure(asserted: &[Triple]) -> BTreeSet<Triple> {
    let ty = vocab::iri(vocab::RDF_TYPE);
    let sub = vocab::iri(vocab::RDFS_SUBCLASS_OF);
    let inv = vocab::iri(vocab::OWL_INVERSE_OF);
    let mut all: BTreeSet<Triple> = asserted.iter().cloned().collect();
    loop {
        let snapshot: Vec<Triple> = all.iter().cloned().collect();
        // every rule's second premise is an inverseOf or subClassOf triple
        let axioms: Vec<&Triple> = snapshot.iter().filter(|t| t.predicate == inv || t.predicate == sub).collect();
        let mut fresh = Vec::new();
        for a in &snapshot {
            if a.predicate == inv {
                if let Some(q) = a.object.as_iri() {
                    fresh.push(Triple::new(q.clone(), inv.clone(), a.subject.clone()));
                }
            }
            for b in axioms.iter().copied() {
                // inv-prop: a is data, b is the axiom
                if b.predicate == inv && b.subject == a.predicate {
                    if let (Some(o), Some(q)) = (a.object.as_iri(), b.object.as_iri()) {
                        fresh.push(Triple::new(o.clone(), q.clone(), a.subject.clone()));
                    }
                }
                if b.predicate == sub && a.object == Term::Iri(b.subject.clone()) {
                    if a.predicate == sub {
                        fresh.push(Triple::new(a.subject.clone(), sub.clone(), b.object.clone()));
                    }
                    if a.predicate == ty {
                        fresh.push(Triple::new(a.subject.clone(), ty.clone(), b.object.clone()));
                    }
                }
            }
        }
        let before = all.len();
        all.extend(fresh);
        if all.len() == before {
            return all;
        }
    }
}

/// A solution row keyed by variable name.
pub type Row = BTreeMap<String, Term>;

/// Evaluates a generated query by enumerating every assignment of the
/// store's terms to the query variables. Required patterns must all hold;
/// an assignment of the optional-only variables extends a row when every
/// optional pattern holds, otherwise the row stays as is. Projection is
/// applied last and duplicates are kept.
pub fn brute_force_select(triples: &[Triple], query: &QueryInstance) -> Vec<Row> {
    let facts: BTreeSet<&Triple> = triples.iter().collect();
    let mut domain: BTreeSet<Term> = BTreeSet::new();
    for t in triples {
        domain.insert(Term::Iri(t.subject.clone()));
        domain.insert(Term::Iri(t.predicate.clone()));
        domain.insert(t.object.clone());
    }
    for pattern in query.required.iter().chain(&query.optional) {
        for slot in pattern {
            if let Slot::Term(t) = slot {
                domain.insert(t.clone());
            }
        }
    }
    let domain: Vec<Term> = domain.into_iter().collect();

    let required_vars = vars_of(&query.required);
    let optional_vars: Vec<String> =
        vars_of(&query.optional).into_iter().filter(|v| !required_vars.contains(v)).collect();

    let mut rows = Vec::new();
    for_each_assignment(&required_vars, &domain, &mut Row::new(), &mut |row| {
        if query.required.iter().all(|p| holds(p, row, &facts)) {
            rows.push(row.clone());
        }
    });

    let mut extended = Vec::new();
    for row in rows {
        if query.optional.is_empty() {
            extended.push(row);
            continue;
        }
        let before = extended.len();
        let mut base = row.clone();
        for_each_assignment(&optional_vars, &domain, &mut base, &mut |full| {
            if query.optional.iter().all(|p| holds(p, full, &facts)) {
                extended.push(full.clone());
            }
        });
        if extended.len() == before {
            extended.push(row);
        }
    }

    let projected: Vec<String> = match &query.shape {
        SelectShape::Star => {
            let mut all = required_vars.clone();
            all.extend(optional_vars.iter().cloned());
            all
        }
        SelectShape::Vars(vars) => vars.clone(),
    };
    extended.into_iter().map(|row| row.into_iter().filter(|(k, _)| projected.contains(k)).collect()).collect()
}

fn vars_of(patterns: &[[Slot; 3]]) -> Vec<String> {
    let mut out = Vec::new();
    for p in patterns {
        for slot in p {
            if let Slot::Var(v) = slot {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
    }
    out
}

fn for_each_assignment(vars: &[String], domain: &[Term], row: &mut Row, f: &mut dyn FnMut(&Row)) {
    match vars.split_first() {
        None => f(row),
        Some((v, rest)) => {
            for term in domain {
                row.insert(v.clone(), term.clone());
                for_each_assignment(rest, domain, row, f);
            }
            row.remove(v);
        }
    }
}

fn holds(pattern: &[Slot; 3], row: &Row, facts: &BTreeSet<&Triple>) -> bool {
    let resolve = |slot: &Slot| match slot {
        Slot::Term(t) => t.clone(),
        Slot::Var(v) => row[v].clone(),
    };
    let (s, p, o) = (resolve(&pattern[0]), resolve(&pattern[1]), resolve(&pattern[2]));
    let (Some(s), Some(p)) = (s.as_iri(), p.as_iri()) else { return false };
    facts.contains(&Triple::new(s.clone(), p.clone(), o))
}

/// Nodes that reach themselves, by Floyd–Warshall reachability.
pub fn cyclic_nodes(edges: &BTreeSet<(Iri, Iri)>) -> BTreeSet<Iri> {
    let nodes: Vec<&Iri> = edges.iter().flat_map(|(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&Iri, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let n = nodes.len();
    let mut reach = vec![vec![false; n]; n];
    for (a, b) in edges {
        reach[index[a]][index[b]] = true;
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut() {
            if row[k] {
                for (cell, &through) in row.iter_mut().zip(&via) {
                    *cell |= through;
                }
            }
        }
    }
    (0..n).filter(|&i| reach[i][i]).map(|i| nodes[i].clone()).collect()
}
