//! Slow, obviously-correct reference implementations and seeded random
//! instance generators. Used by the engine's property tests and by the
//! acceptance suite.

pub mod gen;
pub mod oracle;

pub use gen::{OntologyInstance, QueryInstance, SelectShape};
