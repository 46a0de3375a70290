//! Embedded knowledge base for the Quranic nature ontology.
//!
//! The pipeline is: parse Turtle files ([`turtle`]) into a [`store::Store`],
//! derive the [`model::Schema`], close the store under the inference rules
//! ([`reasoner`]), freeze it, and answer SPARQL queries against the
//! snapshot ([`sparql`]). [`corpus`] ties these together for the shipped
//! dataset.

pub mod api;
pub mod corpus;
pub mod model;
pub mod reasoner;
pub mod sparql;
pub mod store;
pub mod syntax;
pub mod turtle;

pub use model::{Iri, PrefixMap, Schema, Term, Triple, TriplePattern};
pub use store::{BindingSet, FrozenStore, Store};
pub use syntax::ParseError;
