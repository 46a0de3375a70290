//! Deduplicated in-memory triple store with SPO, POS and OSP indexes.
//!
//! A [`Store`] is filled during ingestion and materialization, then frozen
//! into a [`FrozenStore`] that can be shared across threads for queries.
//! All indexes preserve insertion order, so match results are
//! deterministic for a given insertion sequence.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};

use crate::model::{PatternTerm, Term, Triple, TriplePattern, Variable};
use crate::reasoner::Rule;

type TermId = u32;
type Key = [TermId; 3];
type Index = IndexMap<TermId, IndexMap<TermId, Vec<TermId>>>;

/// Where a stored triple came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Asserted,
    /// Produced by `rule` from `premises`, all of which were already stored.
    Inferred { rule: Rule, premises: Vec<Triple> },
}

impl Provenance {
    pub fn is_asserted(&self) -> bool {
        matches!(self, Provenance::Asserted)
    }
}

/// One solution of a pattern: variable name to ground term.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BindingSet(BTreeMap<Variable, Term>);

impl BindingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &Variable) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn get_name(&self, name: &str) -> Option<&Term> {
        self.0.iter().find(|(v, _)| v.name() == name).map(|(_, t)| t)
    }

    /// Binds `var`; returns `false` without changing anything if it is
    /// already bound to a different term.
    pub fn bind(&mut self, var: Variable, term: Term) -> bool {
        match self.0.get(&var) {
            Some(existing) => *existing == term,
            None => {
                self.0.insert(var, term);
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.0.iter()
    }

    /// Compatible mappings agree on every shared variable.
    pub fn is_compatible(&self, other: &BindingSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.0.iter().all(|(v, t)| large.0.get(v).is_none_or(|u| u == t))
    }

    /// Union of two compatible mappings.
    pub fn merge(&self, other: &BindingSet) -> BindingSet {
        let mut out = self.clone();
        for (v, t) in &other.0 {
            out.0.entry(v.clone()).or_insert_with(|| t.clone());
        }
        out
    }

    /// Keeps only the listed variables.
    pub fn project(&self, vars: &[Variable]) -> BindingSet {
        BindingSet(self.0.iter().filter(|(v, _)| vars.contains(v)).map(|(v, t)| (v.clone(), t.clone())).collect())
    }
}

impl FromIterator<(Variable, Term)> for BindingSet {
    fn from_iter<I: IntoIterator<Item = (Variable, Term)>>(iter: I) -> Self {
        BindingSet(iter.into_iter().collect())
    }
}

impl fmt::Display for BindingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}: {t}")?;
        }
        f.write_str("}")
    }
}

/// Mutable triple store used during ingestion and materialization.
#[derive(Debug, Clone, Default)]
pub struct Store {
    dict: IndexSet<Term>,
    triples: IndexMap<Key, Provenance>,
    spo: Index,
    pos: Index,
    osp: Index,
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `triple`; returns `true` iff it was not already present. A
    /// triple keeps the provenance it was first inserted with.
    pub fn insert(&mut self, triple: Triple, provenance: Provenance) -> bool {
        let key = [
            self.intern(Term::Iri(triple.subject)),
            self.intern(Term::Iri(triple.predicate)),
            self.intern(triple.object),
        ];
        if self.triples.contains_key(&key) {
            return false;
        }
        self.triples.insert(key, provenance);
        let [s, p, o] = key;
        push(&mut self.spo, s, p, o);
        push(&mut self.pos, p, o, s);
        push(&mut self.osp, o, s, p);
        true
    }

    pub fn insert_asserted(&mut self, triple: Triple) -> bool {
        self.insert(triple, Provenance::Asserted)
    }

    fn intern(&mut self, term: Term) -> TermId {
        let (id, _) = self.dict.insert_full(term);
        TermId::try_from(id).expect("term dictionary overflow")
    }

    fn id_of(&self, term: &Term) -> Option<TermId> {
        self.dict.get_index_of(term).map(|i| i as TermId)
    }

    fn term(&self, id: TermId) -> &Term {
        &self.dict[id as usize]
    }

    fn decode(&self, [s, p, o]: Key) -> Triple {
        let iri = |id| self.term(id).as_iri().expect("subject and predicate are IRIs").clone();
        Triple { subject: iri(s), predicate: iri(p), object: self.term(o).clone() }
    }

    fn key_of(&self, triple: &Triple) -> Option<Key> {
        Some([
            self.dict.get_index_of(&Term::Iri(triple.subject.clone()))? as TermId,
            self.dict.get_index_of(&Term::Iri(triple.predicate.clone()))? as TermId,
            self.id_of(&triple.object)?,
        ])
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.key_of(triple).is_some_and(|k| self.triples.contains_key(&k))
    }

    pub fn provenance(&self, triple: &Triple) -> Option<&Provenance> {
        self.key_of(triple).and_then(|k| self.triples.get(&k))
    }

    /// All triples in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (Triple, &Provenance)> + '_ {
        self.triples.iter().map(|(k, p)| (self.decode(*k), p))
    }

    pub fn triples(&self) -> Vec<Triple> {
        self.triples.keys().map(|k| self.decode(*k)).collect()
    }

    pub fn asserted_triples(&self) -> Vec<Triple> {
        self.iter().filter(|(_, p)| p.is_asserted()).map(|(t, _)| t).collect()
    }

    pub fn inferred_count(&self) -> usize {
        self.triples.values().filter(|p| !p.is_asserted()).count()
    }

    /// Triples matching the given positions (`None` is a wildcard), using
    /// the index selected by which positions are bound.
    pub fn find(&self, subject: Option<&Term>, predicate: Option<&Term>, object: Option<&Term>) -> Vec<Triple> {
        self.find_keys(subject, predicate, object).into_iter().map(|k| self.decode(k)).collect()
    }

    fn find_keys(&self, subject: Option<&Term>, predicate: Option<&Term>, object: Option<&Term>) -> Vec<Key> {
        let resolve = |t: Option<&Term>| match t {
            None => Some(None),
            Some(t) => self.id_of(t).map(Some),
        };
        let (Some(s), Some(p), Some(o)) = (resolve(subject), resolve(predicate), resolve(object)) else {
            return Vec::new();
        };
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                if self.triples.contains_key(&[s, p, o]) {
                    vec![[s, p, o]]
                } else {
                    Vec::new()
                }
            }
            (Some(s), Some(p), None) => leaf(&self.spo, s, p).iter().map(|&o| [s, p, o]).collect(),
            (Some(s), None, None) => walk(&self.spo, s).map(|(p, o)| [s, p, o]).collect(),
            (None, Some(p), Some(o)) => leaf(&self.pos, p, o).iter().map(|&s| [s, p, o]).collect(),
            (None, Some(p), None) => walk(&self.pos, p).map(|(o, s)| [s, p, o]).collect(),
            (None, None, Some(o)) => walk(&self.osp, o).map(|(s, p)| [s, p, o]).collect(),
            (Some(s), None, Some(o)) => leaf(&self.osp, o, s).iter().map(|&p| [s, p, o]).collect(),
            (None, None, None) => self.triples.keys().copied().collect(),
        }
    }

    /// One binding set per matching triple, binding exactly the pattern's
    /// variables. A matching all-ground pattern yields one empty binding.
    pub fn match_pattern(&self, pattern: &TriplePattern) -> Vec<BindingSet> {
        let [s, p, o] = pattern.positions().map(PatternTerm::as_term);
        self.find_keys(s, p, o)
            .into_iter()
            .filter_map(|key| {
                let mut binding = BindingSet::new();
                for (slot, id) in pattern.positions().into_iter().zip(key) {
                    if let PatternTerm::Var(v) = slot {
                        if !binding.bind(v.clone(), self.term(id).clone()) {
                            return None;
                        }
                    }
                }
                Some(binding)
            })
            .collect()
    }

    /// `true` iff each of the three indexes holds exactly the master set.
    pub fn audit_indexes(&self) -> bool {
        let n = self.triples.len();
        let check = |index: &Index, to_key: fn(TermId, TermId, TermId) -> Key| {
            let mut count = 0;
            for (&a, inner) in index {
                for (&b, leaves) in inner {
                    for &c in leaves {
                        count += 1;
                        if !self.triples.contains_key(&to_key(a, b, c)) {
                            return false;
                        }
                    }
                }
            }
            count == n
        };
        check(&self.spo, |s, p, o| [s, p, o])
            && check(&self.pos, |p, o, s| [s, p, o])
            && check(&self.osp, |o, s, p| [s, p, o])
    }

    pub fn freeze(self) -> FrozenStore {
        FrozenStore { inner: Arc::new(self) }
    }
}

fn push(index: &mut Index, a: TermId, b: TermId, c: TermId) {
    index.entry(a).or_default().entry(b).or_default().push(c);
}

fn leaf(index: &Index, a: TermId, b: TermId) -> &[TermId] {
    index.get(&a).and_then(|inner| inner.get(&b)).map(Vec::as_slice).unwrap_or(&[])
}

fn walk(index: &Index, a: TermId) -> impl Iterator<Item = (TermId, TermId)> + '_ {
    index.get(&a).into_iter().flat_map(|inner| inner.iter().flat_map(|(&b, cs)| cs.iter().map(move |&c| (b, c))))
}

/// Read-only snapshot of a [`Store`]; cheap to clone and share.
#[derive(Debug, Clone)]
pub struct FrozenStore {
    inner: Arc<Store>,
}

impl FrozenStore {
    /// Mutable copy for another ingestion or materialization pass.
    pub fn thaw(&self) -> Store {
        (*self.inner).clone()
    }
}

impl Deref for FrozenStore {
    type Target = Store;

    fn deref(&self) -> &Store {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::vocab::qreg;

    fn fig2() -> Triple {
        Triple::new(qreg("Allah"), qreg("parted"), qreg("Sea"))
    }

    #[test]
    fn set_semantics() {
        let mut store = Store::new();
        assert_eq!(store.len(), 0);
        assert!(store.audit_indexes());
        assert!(store.insert_asserted(fig2()));
        assert_eq!(store.len(), 1);
        assert!(!store.insert_asserted(fig2()));
        assert_eq!(store.len(), 1);
        assert!(store.contains(&fig2()));
    }

    #[test]
    fn single_pattern_answer() {
        let mut store = Store::new();
        store.insert_asserted(fig2());
        store.insert_asserted(Triple::new(qreg("Allah"), qreg("raised"), qreg("TurSina")));
        let rows = store.match_pattern(&TriplePattern::new(qreg("Allah"), qreg("parted"), PatternTerm::var("Answer")));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].get_name("Answer"), Some(&Term::Iri(qreg("Sea"))));
    }

    #[test]
    fn ground_pattern_yields_empty_binding() {
        let mut store = Store::new();
        store.insert_asserted(fig2());
        assert_eq!(store.match_pattern(&TriplePattern::from(&fig2())), vec![BindingSet::new()]);
        let absent = Triple::new(qreg("Allah"), qreg("parted"), qreg("Moon"));
        assert!(store.match_pattern(&TriplePattern::from(&absent)).is_empty());
    }

    #[test]
    fn empty_store_matches_nothing() {
        let store = Store::new();
        let all = TriplePattern::new(PatternTerm::var("s"), PatternTerm::var("p"), PatternTerm::var("o"));
        assert!(store.match_pattern(&all).is_empty());
    }

    #[test]
    fn repeated_variable_must_agree() {
        let mut store = Store::new();
        store.insert_asserted(Triple::new(qreg("a"), qreg("p"), qreg("a")));
        store.insert_asserted(Triple::new(qreg("a"), qreg("p"), qreg("b")));
        let rows = store.match_pattern(&TriplePattern::new(PatternTerm::var("x"), qreg("p"), PatternTerm::var("x")));
        assert_eq!(rows.len(), 1);
    }

    #[test]
    fn provenance_kept_from_first_insert() {
        let mut store = Store::new();
        store.insert_asserted(fig2());
        let inferred = Provenance::Inferred { rule: Rule::InverseProperty, premises: vec![] };
        assert!(!store.insert(fig2(), inferred));
        assert!(store.provenance(&fig2()).unwrap().is_asserted());
        assert_eq!(store.inferred_count(), 0);
    }

    #[test]
    fn frozen_snapshot_is_shareable() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FrozenStore>();
        let mut store = Store::new();
        store.insert_asserted(fig2());
        let frozen = store.freeze();
        let copy = frozen.clone();
        let handle = std::thread::spawn(move || copy.len());
        assert_eq!(handle.join().unwrap(), 1);
        let mut thawed = frozen.thaw();
        thawed.insert_asserted(Triple::new(qreg("x"), qreg("y"), qreg("z")));
        assert_eq!((frozen.len(), thawed.len()), (1, 2));
    }

    #[test]
    fn binding_compatibility() {
        let x = Variable::new("x").unwrap();
        let y = Variable::new("y").unwrap();
        let a: BindingSet = [(x.clone(), Term::plain("1"))].into_iter().collect();
        let b: BindingSet = [(x.clone(), Term::plain("1")), (y.clone(), Term::plain("2"))].into_iter().collect();
        let c: BindingSet = [(x.clone(), Term::plain("3"))].into_iter().collect();
        assert!(a.is_compatible(&b));
        assert!(!a.is_compatible(&c));
        assert!(BindingSet::new().is_compatible(&c));
        assert_eq!(a.merge(&b), b);
        assert_eq!(b.project(std::slice::from_ref(&y)).len(), 1);
    }
}
