//! Seeded random instances.

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

use qkb_core::model::vocab;
use qkb_core::{Iri, PrefixMap, Schema, Term, Triple};

pub const NS: &str = "http://test.example/ns#";

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn iri(local: &str) -> Iri {
    vocab::iri(&format!("{NS}{local}"))
}

/// Random triples over `entities` subjects/objects, `predicates`
/// predicates and a few literals of each kind.
pub fn random_triples(rng: &mut StdRng, count: usize, entities: usize, predicates: usize) -> Vec<Triple> {
    let literals = [
        Term::plain("x"),
        Term::plain("y"),
        Term::lang("x", "en").unwrap(),
        Term::typed("x", vocab::iri(vocab::XSD_STRING)),
    ];
    (0..count)
        .map(|_| {
            let s = iri(&format!("e{}", rng.random_range(0..entities)));
            let p = iri(&format!("p{}", rng.random_range(0..predicates)));
            let o = if rng.random_bool(0.25) {
                literals.choose(rng).unwrap().clone()
            } else {
                Term::Iri(iri(&format!("e{}", rng.random_range(0..entities))))
            };
            Triple::new(s, p, o)
        })
        .collect()
}

/// A random schema plus data: an acyclic subclass graph over at most 20
/// classes, at most 5 inverse pairs and at most 100 data triples.
#[derive(Debug, Clone)]
pub struct OntologyInstance {
    pub triples: Vec<Triple>,
}

impl OntologyInstance {
    pub fn generate(rng: &mut StdRng) -> Self {
        let ty = vocab::iri(vocab::RDF_TYPE);
        let sub = vocab::iri(vocab::RDFS_SUBCLASS_OF);
        let inv = vocab::iri(vocab::OWL_INVERSE_OF);
        let mut triples = Vec::new();

        let classes: Vec<Iri> = (0..rng.random_range(1..=20)).map(|i| iri(&format!("C{i}"))).collect();
        for c in &classes {
            triples.push(Triple::new(c.clone(), ty.clone(), vocab::iri(vocab::OWL_CLASS)));
        }
        // edges only point to lower indices, so the graph is acyclic
        for i in 1..classes.len() {
            for _ in 0..rng.random_range(0..=2) {
                let parent = &classes[rng.random_range(0..i)];
                triples.push(Triple::new(classes[i].clone(), sub.clone(), parent.clone()));
            }
        }

        let props: Vec<Iri> = (0..rng.random_range(1..=8)).map(|i| iri(&format!("p{i}"))).collect();
        for p in &props {
            triples.push(Triple::new(p.clone(), ty.clone(), vocab::iri(vocab::OWL_OBJECT_PROPERTY)));
        }
        if props.len() > 1 {
            for _ in 0..rng.random_range(0..=5) {
                let p = props.choose(rng).unwrap().clone();
                let q = props.choose(rng).unwrap().clone();
                if p != q {
                    triples.push(Triple::new(p, inv.clone(), q));
                }
            }
        }

        let individuals: Vec<Iri> = (0..rng.random_range(1..=12)).map(|i| iri(&format!("i{i}"))).collect();
        for _ in 0..rng.random_range(0..=100) {
            let s = individuals.choose(rng).unwrap().clone();
            let t = match rng.random_range(0..10) {
                0..=3 => Triple::new(s, ty.clone(), classes.choose(rng).unwrap().clone()),
                4 => Triple::new(s, props.choose(rng).unwrap().clone(), Term::plain("note")),
                _ => Triple::new(s, props.choose(rng).unwrap().clone(), individuals.choose(rng).unwrap().clone()),
            };
            triples.push(t);
        }
        triples.dedup();
        OntologyInstance { triples }
    }

    pub fn schema(&self) -> Schema {
        Schema::from_triples(&self.triples)
    }
}

/// A query slot: a variable name or a fixed term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Var(String),
    Term(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectShape {
    Star,
    Vars(Vec<String>),
}

/// A random `SELECT` over the small vocabulary of
/// [`QueryInstance::store`]: up to four required patterns, some wrapped in
/// nested groups, and at most one trailing `OPTIONAL` group.
#[derive(Debug, Clone)]
pub struct QueryInstance {
    pub required: Vec<[Slot; 3]>,
    /// Which required patterns are written inside their own `{ }`.
    pub nested: Vec<bool>,
    pub optional: Vec<[Slot; 3]>,
    pub shape: SelectShape,
}

const VARS: [&str; 4] = ["a", "b", "c", "d"];
const ENTITIES: usize = 6;
const PREDICATES: usize = 3;

impl QueryInstance {
    /// A store of at most 50 triples for the query vocabulary.
    pub fn store(rng: &mut StdRng) -> Vec<Triple> {
        let n = rng.random_range(0..=50);
        let mut triples = random_triples(rng, n, ENTITIES, PREDICATES);
        triples.sort();
        triples.dedup();
        triples
    }

    pub fn generate(rng: &mut StdRng) -> Self {
        let pattern = |rng: &mut StdRng| -> [Slot; 3] {
            let var = |rng: &mut StdRng| Slot::Var(VARS.choose(rng).unwrap().to_string());
            let s = if rng.random_bool(0.5) {
                var(rng)
            } else {
                Slot::Term(Term::Iri(iri(&format!("e{}", rng.random_range(0..ENTITIES)))))
            };
            let p = if rng.random_bool(0.25) {
                var(rng)
            } else {
                Slot::Term(Term::Iri(iri(&format!("p{}", rng.random_range(0..PREDICATES)))))
            };
            let o = match rng.random_range(0..6) {
                0..=2 => var(rng),
                3 => Slot::Term(Term::plain("x")),
                _ => Slot::Term(Term::Iri(iri(&format!("e{}", rng.random_range(0..ENTITIES))))),
            };
            [s, p, o]
        };
        let required: Vec<[Slot; 3]> = (0..rng.random_range(1..=4)).map(|_| pattern(rng)).collect();
        let nested = required.iter().map(|_| rng.random_bool(0.3)).collect();
        let optional = if rng.random_bool(0.6) { (0..rng.random_range(1..=2)).map(|_| pattern(rng)).collect() } else { Vec::new() };

        let mut mentioned: Vec<String> = Vec::new();
        for slot in required.iter().chain(&optional).flatten() {
            if let Slot::Var(v) = slot {
                if !mentioned.contains(v) {
                    mentioned.push(v.clone());
                }
            }
        }
        let shape = if mentioned.is_empty() || rng.random_bool(0.5) {
            SelectShape::Star
        } else {
            let picked: Vec<String> = mentioned.iter().filter(|_| rng.random_bool(0.6)).cloned().collect();
            if picked.is_empty() {
                SelectShape::Vars(vec![mentioned[0].clone()])
            } else {
                SelectShape::Vars(picked)
            }
        };
        QueryInstance { required, nested, optional, shape }
    }

    pub fn to_sparql(&self) -> String {
        let slot = |s: &Slot| match s {
            Slot::Var(v) => format!("?{v}"),
            Slot::Term(t) => t.to_string(),
        };
        let triple = |p: &[Slot; 3]| format!("{} {} {} .", slot(&p[0]), slot(&p[1]), slot(&p[2]));
        let head = match &self.shape {
            SelectShape::Star => "*".to_string(),
            SelectShape::Vars(vars) => vars.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(" "),
        };
        let mut body = Vec::new();
        for (p, nested) in self.required.iter().zip(&self.nested) {
            body.push(if *nested { format!("{{ {} }}", triple(p)) } else { triple(p) });
        }
        if !self.optional.is_empty() {
            let inner: Vec<String> = self.optional.iter().map(triple).collect();
            body.push(format!("OPTIONAL {{ {} }}", inner.join(" ")));
        }
        format!("SELECT {head} WHERE {{ {} }}", body.join(" "))
    }
}

fn random_text(rng: &mut StdRng) -> String {
    const PIECES: [&str; 14] = ["a", "Z", " ", "\"", "\\", "\n", "\t", "é", "ك", "\u{1}", "🌊", "[recall]", "2:50", "'"];
    (0..rng.random_range(0..8)).map(|_| *PIECES.choose(rng).unwrap()).collect()
}

fn random_iri(rng: &mut StdRng) -> Iri {
    const LOCAL: [&str; 10] = ["a", "b9", "2:50", "x.y", "-z", "_u", "é", "", "p%20q", "Sea"];
    let ns = ["http://a.example/#", "http://b.example/x/", "urn:c:"].choose(rng).unwrap();
    let local: String = (0..rng.random_range(1..3)).map(|_| *LOCAL.choose(rng).unwrap()).collect();
    vocab::iri(&format!("{ns}{local}"))
}

/// A random Turtle-expressible document: awkward literals (quotes,
/// escapes, control characters, non-ASCII), IRIs that may or may not
/// compact to prefixed names, and `rdf:type` statements.
pub fn random_document(rng: &mut StdRng) -> (Vec<Triple>, PrefixMap) {
    let mut prefixes = vocab::standard_prefixes();
    prefixes.insert("a", vocab::iri("http://a.example/#"));
    if rng.random_bool(0.5) {
        prefixes.insert("b", vocab::iri("http://b.example/x/"));
    }
    let triples = (0..rng.random_range(0..30))
        .map(|_| {
            let object = match rng.random_range(0..5) {
                0 => Term::plain(random_text(rng)),
                1 => Term::lang(random_text(rng), *["en", "ar", "en-GB"].choose(rng).unwrap()).unwrap(),
                2 => Term::typed(random_text(rng), random_iri(rng)),
                3 => Term::Iri(vocab::iri(vocab::OWL_CLASS)),
                _ => Term::Iri(random_iri(rng)),
            };
            let predicate = if rng.random_bool(0.2) { vocab::iri(vocab::RDF_TYPE) } else { random_iri(rng) };
            Triple::new(random_iri(rng), predicate, object)
        })
        .collect();
    (triples, prefixes)
}
