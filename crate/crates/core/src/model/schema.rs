use std::collections::{BTreeMap, BTreeSet};

use super::vocab;
use super::{Finding, Iri, Term, Triple, ValidationReport};

/// Unordered pair of mutually inverse object properties.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InversePair {
    first: Iri,
    second: Iri,
}

impl InversePair {
    pub fn new(p: Iri, q: Iri) -> Self {
        if p <= q {
            InversePair { first: p, second: q }
        } else {
            InversePair { first: q, second: p }
        }
    }

    pub fn members(&self) -> (&Iri, &Iri) {
        (&self.first, &self.second)
    }

    /// The partner of `p`, if `p` is a member.
    pub fn inverse_of(&self, p: &Iri) -> Option<&Iri> {
        if p == &self.first {
            Some(&self.second)
        } else if p == &self.second {
            Some(&self.first)
        } else {
            None
        }
    }
}

/// Declared vocabulary of an ontology: classes, subclass axioms and
/// properties. Derived from the schema triples of a store.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Schema {
    pub classes: BTreeSet<Iri>,
    pub subclass_axioms: BTreeSet<(Iri, Iri)>,
    pub object_properties: BTreeSet<Iri>,
    pub inverse_pairs: BTreeSet<InversePair>,
    pub annotation_properties: BTreeSet<Iri>,
}

impl Schema {
    /// Reads `rdf:type owl:Class` / `rdfs:Class`, `owl:ObjectProperty`,
    /// `owl:AnnotationProperty`, `rdfs:subClassOf` and `owl:inverseOf`.
    pub fn from_triples<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Self {
        let mut schema = Schema::default();
        for t in triples {
            let object_iri = t.object.as_iri();
            match (t.predicate.as_str(), object_iri.map(Iri::as_str)) {
                (vocab::RDF_TYPE, Some(vocab::OWL_CLASS | vocab::RDFS_CLASS)) => {
                    schema.classes.insert(t.subject.clone());
                }
                (vocab::RDF_TYPE, Some(vocab::OWL_OBJECT_PROPERTY)) => {
                    schema.object_properties.insert(t.subject.clone());
                }
                (vocab::RDF_TYPE, Some(vocab::OWL_ANNOTATION_PROPERTY)) => {
                    schema.annotation_properties.insert(t.subject.clone());
                }
                (vocab::RDFS_SUBCLASS_OF, Some(_)) => {
                    schema.subclass_axioms.insert((t.subject.clone(), object_iri.unwrap().clone()));
                }
                (vocab::OWL_INVERSE_OF, Some(_)) => {
                    schema.inverse_pairs.insert(InversePair::new(t.subject.clone(), object_iri.unwrap().clone()));
                }
                _ => {}
            }
        }
        schema
    }

    /// Schema as triples, the inverse of [`Schema::from_triples`].
    pub fn to_triples(&self) -> Vec<Triple> {
        let ty = vocab::iri(vocab::RDF_TYPE);
        let mut out = Vec::new();
        for c in &self.classes {
            out.push(Triple::new(c.clone(), ty.clone(), vocab::iri(vocab::OWL_CLASS)));
        }
        for p in &self.object_properties {
            out.push(Triple::new(p.clone(), ty.clone(), vocab::iri(vocab::OWL_OBJECT_PROPERTY)));
        }
        for p in &self.annotation_properties {
            out.push(Triple::new(p.clone(), ty.clone(), vocab::iri(vocab::OWL_ANNOTATION_PROPERTY)));
        }
        for (child, parent) in &self.subclass_axioms {
            out.push(Triple::new(child.clone(), vocab::iri(vocab::RDFS_SUBCLASS_OF), parent.clone()));
        }
        for pair in &self.inverse_pairs {
            let (p, q) = pair.members();
            out.push(Triple::new(p.clone(), vocab::iri(vocab::OWL_INVERSE_OF), Term::Iri(q.clone())));
        }
        out
    }

    /// Direct superclasses per class, as asserted.
    pub fn parents(&self) -> BTreeMap<&Iri, Vec<&Iri>> {
        let mut map: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
        for (child, parent) in &self.subclass_axioms {
            map.entry(child).or_default().push(parent);
        }
        map
    }

    /// Direct subclasses per class, as asserted.
    pub fn children(&self) -> BTreeMap<&Iri, Vec<&Iri>> {
        let mut map: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
        for (child, parent) in &self.subclass_axioms {
            map.entry(parent).or_default().push(child);
        }
        map
    }

    /// Declared classes with no asserted superclass.
    pub fn root_classes(&self) -> Vec<&Iri> {
        let parents = self.parents();
        self.classes.iter().filter(|c| !parents.contains_key(c)).collect()
    }

    /// `class` and every class reachable from it through subclass axioms.
    pub fn superclasses_of(&self, class: &Iri) -> BTreeSet<Iri> {
        let parents = self.parents();
        let mut seen = BTreeSet::new();
        let mut stack = vec![class];
        while let Some(c) = stack.pop() {
            if seen.insert(c.clone()) {
                if let Some(ps) = parents.get(c) {
                    stack.extend(ps.iter().copied());
                }
            }
        }
        seen
    }

    pub fn inverse_of(&self, property: &Iri) -> Option<&Iri> {
        self.inverse_pairs.iter().find_map(|pair| pair.inverse_of(property))
    }

    /// Checks the schema invariants: subclass endpoints and inverse pair
    /// members are declared, and the asserted subclass graph is acyclic.
    pub fn closure_check(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (child, parent) in &self.subclass_axioms {
            for end in [child, parent] {
                if !self.classes.contains(end) {
                    report.push(Finding::new(
                        "schema/undeclared-class",
                        Some(end.clone()),
                        format!("subclass axiom {child} ⊑ {parent} uses undeclared class {end}"),
                    ));
                }
            }
        }
        for pair in &self.inverse_pairs {
            let (p, q) = pair.members();
            for member in [p, q] {
                if !self.object_properties.contains(member) {
                    report.push(Finding::new(
                        "schema/undeclared-property",
                        Some(member.clone()),
                        format!("inverse pair {{{p}, {q}}} uses undeclared object property {member}"),
                    ));
                }
            }
        }
        for cycle in find_subclass_cycles(&self.subclass_axioms) {
            let path: Vec<String> = cycle.iter().map(Iri::to_string).collect();
            report.push(Finding::new(
                "schema/cycle",
                cycle.first().cloned(),
                format!("subclass cycle: {}", path.join(" ⊑ ")),
            ));
        }
        report
    }
}

/// Depth-first search for back edges. Each returned cycle lists its
/// nodes in order, closing back on the first.
pub fn find_subclass_cycles(axioms: &BTreeSet<(Iri, Iri)>) -> Vec<Vec<Iri>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }

    let mut graph: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    for (child, parent) in axioms {
        graph.entry(child).or_default().push(parent);
        graph.entry(parent).or_default();
    }
    let mut marks: BTreeMap<&Iri, Mark> = graph.keys().map(|k| (*k, Mark::Fresh)).collect();
    let mut cycles = Vec::new();

    let nodes: Vec<&Iri> = graph.keys().copied().collect();
    for start in nodes {
        if marks[start] != Mark::Fresh {
            continue;
        }
        // Iterative DFS: (node, next edge index); `path` mirrors the stack.
        let mut stack: Vec<(&Iri, usize)> = vec![(start, 0)];
        marks.insert(start, Mark::Active);
        while let Some(&mut (node, ref mut edge)) = stack.last_mut() {
            let succ = &graph[node];
            if *edge < succ.len() {
                let next = succ[*edge];
                *edge += 1;
                match marks[next] {
                    Mark::Fresh => {
                        marks.insert(next, Mark::Active);
                        stack.push((next, 0));
                    }
                    Mark::Active => {
                        let from = stack.iter().position(|(n, _)| *n == next).unwrap();
                        cycles.push(stack[from..].iter().map(|(n, _)| (*n).clone()).collect());
                    }
                    Mark::Done => {}
                }
            } else {
                marks.insert(node, Mark::Done);
                stack.pop();
            }
        }
    }
    cycles
}
