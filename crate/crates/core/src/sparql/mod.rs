//! The SPARQL subset needed by the canned queries: `PREFIX`, `SELECT`
//! (`*` or a variable list), basic graph patterns, nested groups and
//! `OPTIONAL`.

mod ast;
mod eval;
mod parser;
mod results;

pub use ast::{GroupPattern, PatternElement, Projection, QueryAst};
pub use eval::{evaluate, SolutionSequence};
pub use parser::{parse_query, parse_query_with};
pub use results::{parse_json_results, render_term, serialize_results, ResultFormat, ResultsParseError};
