use crate::model::{PatternTerm, TriplePattern, Variable};
use crate::store::{BindingSet, Store};

use super::ast::{GroupPattern, PatternElement, QueryAst};

/// Ordered bag of solutions. Rows may leave variables unbound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionSequence {
    pub vars: Vec<Variable>,
    pub rows: Vec<BindingSet>,
}

impl SolutionSequence {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Evaluates `query` against a store snapshot.
///
/// Elements of a group are folded left to right starting from the single
/// empty solution: a triple pattern or nested group is joined in, an
/// `OPTIONAL` group is left-joined. Projection happens last; duplicates
/// are kept.
pub fn evaluate(query: &QueryAst, store: &Store) -> SolutionSequence {
    let vars = query.result_variables();
    let rows = eval_group(&query.pattern, store).into_iter().map(|row| row.project(&vars)).collect();
    SolutionSequence { vars, rows }
}

fn eval_group(group: &GroupPattern, store: &Store) -> Vec<BindingSet> {
    let mut current = vec![BindingSet::new()];
    for element in &group.elements {
        current = match element {
            PatternElement::Triple(pattern) => extend_with_pattern(current, pattern, store),
            PatternElement::Group(inner) => join(&current, &eval_group(inner, store)),
            PatternElement::Optional(inner) => left_join(&current, &eval_group(inner, store)),
        };
        if current.is_empty() {
            break;
        }
    }
    current
}

/// Join with a single pattern: each row's bindings are substituted into the
/// pattern before matching, which is equivalent to a compatible merge.
fn extend_with_pattern(rows: Vec<BindingSet>, pattern: &TriplePattern, store: &Store) -> Vec<BindingSet> {
    let mut out = Vec::new();
    for row in rows {
        let bound = substitute(pattern, &row);
        for m in store.match_pattern(&bound) {
            out.push(row.merge(&m));
        }
    }
    out
}

fn substitute(pattern: &TriplePattern, row: &BindingSet) -> TriplePattern {
    let fill = |slot: &PatternTerm| match slot {
        PatternTerm::Var(v) => row.get(v).map_or_else(|| slot.clone(), |t| PatternTerm::Term(t.clone())),
        PatternTerm::Term(_) => slot.clone(),
    };
    TriplePattern { subject: fill(&pattern.subject), predicate: fill(&pattern.predicate), object: fill(&pattern.object) }
}

fn join(left: &[BindingSet], right: &[BindingSet]) -> Vec<BindingSet> {
    let mut out = Vec::new();
    for l in left {
        for r in right {
            if l.is_compatible(r) {
                out.push(l.merge(r));
            }
        }
    }
    out
}

fn left_join(left: &[BindingSet], right: &[BindingSet]) -> Vec<BindingSet> {
    let mut out = Vec::new();
    for l in left {
        let before = out.len();
        for r in right {
            if l.is_compatible(r) {
                out.push(l.merge(r));
            }
        }
        if out.len() == before {
            out.push(l.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::vocab::{self, qreg};
    use crate::model::{Term, Triple};
    use crate::sparql::parse_query_with;

    fn store() -> Store {
        let mut store = Store::new();
        let comment = vocab::iri(vocab::RDFS_COMMENT);
        for t in [
            Triple::new(qreg("Allah"), qreg("parted"), qreg("Sea")),
            Triple::new(qreg("Allah"), qreg("raised"), qreg("TurSina")),
            Triple::new(qreg("2:93"), qreg("hasPart"), qreg("TurSina")),
            Triple::new(qreg("2:63"), qreg("hasPart"), qreg("TurSina")),
            Triple::new(qreg("2:50"), qreg("hasPart"), qreg("Sea")),
            Triple::new(qreg("2:93"), comment.clone(), Term::plain("ninety-three")),
        ] {
            store.insert_asserted(t);
        }
        store
    }

    fn run(q: &str) -> SolutionSequence {
        evaluate(&parse_query_with(q, &vocab::corpus_prefixes()).unwrap(), &store())
    }

    #[test]
    fn single_pattern() {
        let out = run("SELECT * WHERE {{qreg:Allah qreg:parted ?Answer.}}");
        assert_eq!(out.vars, vec![Variable::new("Answer").unwrap()]);
        assert_eq!(out.rows.len(), 1);
        assert_eq!(out.rows[0].get_name("Answer"), Some(&Term::Iri(qreg("Sea"))));
    }

    #[test]
    fn optional_keeps_unmatched_rows() {
        let out = run(
            "SELECT ?Concept ?AyatNo ?Ayat WHERE {{qreg:Allah qreg:raised ?Concept.} {?AyatNo qreg:hasPart ?Concept.} OPTIONAL {?AyatNo rdfs:comment ?Ayat.}}",
        );
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.rows[0].get_name("AyatNo"), Some(&Term::Iri(qreg("2:93"))));
        assert_eq!(out.rows[0].get_name("Ayat"), Some(&Term::plain("ninety-three")));
        assert_eq!(out.rows[1].get_name("AyatNo"), Some(&Term::Iri(qreg("2:63"))));
        assert_eq!(out.rows[1].get_name("Ayat"), None);
    }

    #[test]
    fn unknown_iris_match_nothing() {
        assert!(run("SELECT ?x { qreg:Nobody qreg:parted ?x }").is_empty());
    }

    #[test]
    fn projection_drops_other_variables() {
        let out = run("SELECT ?v { ?v qreg:hasPart ?c }");
        assert_eq!(out.rows.len(), 3);
        assert!(out.rows.iter().all(|r| r.len() == 1));
    }

    #[test]
    fn bag_semantics_keep_duplicates() {
        // each verse appears once per part it has
        let out = run("SELECT ?v { ?v qreg:hasPart ?c . ?x qreg:raised ?c }");
        assert_eq!(out.rows.len(), 2);
        let out = run("SELECT ?who { ?who ?p ?o . ?v qreg:hasPart qreg:TurSina }");
        assert_eq!(out.rows.len(), 12);
    }
}
