//! Reader and writer for the Turtle subset used by the corpus files.
//!
//! Supported: `@prefix` directives, statements with `;` predicate lists and
//! `,` object lists, `<iri>` and prefixed names, the `a` keyword, and
//! double-quoted strings with an optional `@lang` or `^^datatype`.
//! Blank nodes, collections, numeric and boolean shorthand, `@base` and
//! multi-line strings are rejected.

mod parser;
mod writer;

pub use parser::{parse_document, ParsedDocument};
pub use writer::serialize;
