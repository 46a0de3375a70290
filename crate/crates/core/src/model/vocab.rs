//! Namespaces and the handful of well-known IRIs the engine treats specially.

use super::{Iri, PrefixMap};

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Namespace of the Quranic nature ontology.
pub const QREG: &str = "http://www.semanticweb.org/ontologies/2014/9/Ontology141234814506#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
pub const OWL_INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";

pub fn iri(value: &str) -> Iri {
    Iri::new(value).expect("vocabulary IRIs are well-formed")
}

/// IRI in the ontology namespace for `local`.
pub fn qreg(local: &str) -> Iri {
    iri(&format!("{QREG}{local}"))
}

/// `rdf`, `rdfs`, `owl` and `xsd`.
pub fn standard_prefixes() -> PrefixMap {
    let mut map = PrefixMap::new();
    for (label, ns) in [("rdf", RDF), ("rdfs", RDFS), ("owl", OWL), ("xsd", XSD)] {
        map.insert(label, iri(ns));
    }
    map
}

/// Standard prefixes plus `qreg`.
pub fn corpus_prefixes() -> PrefixMap {
    let mut map = standard_prefixes();
    map.insert("qreg", iri(QREG));
    map
}
