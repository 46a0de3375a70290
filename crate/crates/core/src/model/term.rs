use std::fmt;

use super::ModelError;

/// An absolute IRI, compared by plain string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, ModelError> {
        let value = value.into();
        if is_valid_iri(&value) {
            Ok(Iri(value))
        } else {
            Err(ModelError::InvalidIri(value))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

fn is_valid_iri(value: &str) -> bool {
    if value.is_empty()
        || value
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
    {
        return false;
    }
    if value.contains("://") {
        return value.split("://").next().is_some_and(is_scheme);
    }
    // URN-like: scheme ":" non-empty rest
    match value.split_once(':') {
        Some((scheme, rest)) => is_scheme(scheme) && !rest.is_empty(),
        None => false,
    }
}

fn is_scheme(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

/// A ground RDF node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Plain(String),
    Lang { text: String, lang: String },
    Typed { text: String, datatype: Iri },
}

impl Term {
    pub fn plain(text: impl Into<String>) -> Self {
        Term::Plain(text.into())
    }

    pub fn lang(text: impl Into<String>, lang: impl Into<String>) -> Result<Self, ModelError> {
        let lang = lang.into();
        if !is_valid_lang_tag(&lang) {
            return Err(ModelError::InvalidLangTag(lang));
        }
        Ok(Term::Lang { text: text.into(), lang })
    }

    pub fn typed(text: impl Into<String>, datatype: Iri) -> Self {
        Term::Typed { text: text.into(), datatype }
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        !matches!(self, Term::Iri(_))
    }

    /// Lexical form of a literal; `None` for IRIs.
    pub fn literal_text(&self) -> Option<&str> {
        match self {
            Term::Iri(_) => None,
            Term::Plain(text) | Term::Lang { text, .. } | Term::Typed { text, .. } => Some(text),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl fmt::Display for Term {
    /// N-Triples style rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "{iri}"),
            Term::Plain(text) => write!(f, "\"{}\"", escape_string(text)),
            Term::Lang { text, lang } => write!(f, "\"{}\"@{lang}", escape_string(text)),
            Term::Typed { text, datatype } => write!(f, "\"{}\"^^{datatype}", escape_string(text)),
        }
    }
}

/// Escapes a literal's lexical form for a double-quoted string.
pub fn escape_string(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// `[A-Za-z]+(-[A-Za-z0-9]+)*`
pub fn is_valid_lang_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let primary = parts.next().unwrap_or("");
    !primary.is_empty()
        && primary.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// A SPARQL / pattern variable name, `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(Variable(name))
        } else {
            Err(ModelError::InvalidVariable(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(Variable),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(Variable::new(name).expect("valid variable name"))
    }

    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            PatternTerm::Term(t) => Some(t),
            PatternTerm::Var(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(term: Term) -> Self {
        PatternTerm::Term(term)
    }
}

impl From<Iri> for PatternTerm {
    fn from(iri: Iri) -> Self {
        PatternTerm::Term(Term::Iri(iri))
    }
}

impl From<Variable> for PatternTerm {
    fn from(var: Variable) -> Self {
        PatternTerm::Var(var)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => write!(f, "{t}"),
            PatternTerm::Var(v) => write!(f, "{v}"),
        }
    }
}

/// A ground statement. Subject and predicate are always IRIs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple { subject, predicate, object: object.into() }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern { subject: subject.into(), predicate: predicate.into(), object: object.into() }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    /// Variables in subject, predicate, object order (repeats included).
    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }
}

impl From<&Triple> for TriplePattern {
    fn from(t: &Triple) -> Self {
        TriplePattern::new(t.subject.clone(), t.predicate.clone(), t.object.clone())
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
