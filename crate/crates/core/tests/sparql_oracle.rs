use qkb_core::model::vocab;
use qkb_core::sparql::{evaluate, parse_query_with};
use qkb_core::{Store, Triple};
use qkb_testkit::gen::{self, QueryInstance};
use qkb_testkit::oracle::{brute_force_select, Row};

fn build(triples: &[Triple]) -> Store {
    let mut store = Store::new();
    for t in triples {
        store.insert_asserted(t.clone());
    }
    store
}

fn engine_rows(query: &str, store: &Store) -> Vec<Row> {
    let ast = parse_query_with(query, &vocab::standard_prefixes()).unwrap_or_else(|e| panic!("{query}: {e}"));
    let out = evaluate(&ast, store);
    let mut rows: Vec<Row> =
        out.rows.iter().map(|r| r.iter().map(|(v, t)| (v.name().to_string(), t.clone())).collect()).collect();
    rows.sort();
    rows
}

#[test]
fn engine_matches_brute_force_enumeration() {
    let mut nonempty = 0;
    for seed in 0..200 {
        let mut rng = gen::rng(seed);
        let triples = QueryInstance::store(&mut rng);
        let query = QueryInstance::generate(&mut rng);
        let text = query.to_sparql();
        let got = engine_rows(&text, &build(&triples));
        let mut want = brute_force_select(&triples, &query);
        want.sort();
        assert_eq!(got, want, "seed {seed}: {text}");
        nonempty += usize::from(!got.is_empty());
    }
    assert!(nonempty > 40, "too few cases with answers: {nonempty}");
}

#[test]
fn join_order_does_not_change_the_bag() {
    for seed in 0..100 {
        let mut rng = gen::rng(seed);
        let triples = QueryInstance::store(&mut rng);
        let mut query = QueryInstance::generate(&mut rng);
        query.optional.clear();
        let store = build(&triples);
        let forward = engine_rows(&query.to_sparql(), &store);
        query.required.reverse();
        query.nested.reverse();
        assert_eq!(engine_rows(&query.to_sparql(), &store), forward, "seed {seed}");
    }
}

#[test]
fn optional_never_drops_rows() {
    for seed in 0..100 {
        let mut rng = gen::rng(seed);
        let triples = QueryInstance::store(&mut rng);
        let mut query = QueryInstance::generate(&mut rng);
        query.shape = gen::SelectShape::Star;
        if query.optional.is_empty() {
            continue;
        }
        let store = build(&triples);
        let with = engine_rows(&query.to_sparql(), &store);
        let optional = std::mem::take(&mut query.optional);
        let without = engine_rows(&query.to_sparql(), &store);
        assert!(with.len() >= without.len(), "seed {seed}");
        // every base row survives, possibly extended
        for base in &without {
            assert!(with.iter().any(|r| base.iter().all(|(k, v)| r.get(k) == Some(v))), "seed {seed}");
        }
        query.optional = optional;
    }
}

#[test]
fn projection_only_keeps_selected_variables() {
    for seed in 0..100 {
        let mut rng = gen::rng(seed);
        let triples = QueryInstance::store(&mut rng);
        let query = QueryInstance::generate(&mut rng);
        let gen::SelectShape::Vars(vars) = &query.shape else { continue };
        let store = build(&triples);
        let ast = parse_query_with(&query.to_sparql(), &vocab::standard_prefixes()).unwrap();
        let out = evaluate(&ast, &store);
        let names: Vec<&str> = out.vars.iter().map(|v| v.name()).collect();
        assert_eq!(names, vars.iter().map(String::as_str).collect::<Vec<_>>());
        let mut star = query.clone();
        star.shape = gen::SelectShape::Star;
        let full = engine_rows(&star.to_sparql(), &store);
        assert_eq!(out.rows.len(), full.len());
        for row in &out.rows {
            assert!(row.iter().all(|(v, _)| vars.contains(&v.name().to_string())));
            let restricted: Row = row.iter().map(|(v, t)| (v.name().to_string(), t.clone())).collect();
            assert!(full.iter().any(|f| restricted.iter().all(|(k, v)| f.get(k) == Some(v))), "seed {seed}");
        }
    }
}
