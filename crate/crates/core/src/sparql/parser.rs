use crate::model::{is_valid_lang_tag, vocab, Iri, ModelError, PatternTerm, PrefixMap, Term, TriplePattern, Variable};
use crate::syntax::{Lexer, ParseError, Position, Token};

use super::ast::{GroupPattern, PatternElement, Projection, QueryAst};

const UPDATE_KEYWORDS: &[&str] = &["INSERT", "DELETE", "LOAD", "CLEAR", "CREATE", "DROP", "COPY", "MOVE", "ADD", "WITH"];
const UNSUPPORTED_IN_GROUP: &[&str] = &["FILTER", "UNION", "MINUS", "BIND", "VALUES", "GRAPH", "SERVICE"];
const UNSUPPORTED_MODIFIERS: &[&str] = &["ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING"];

/// Parses a query with only the standard `rdf`/`rdfs`/`owl`/`xsd` prefixes
/// predeclared.
pub fn parse_query(text: &str) -> Result<QueryAst, ParseError> {
    parse_query_with(text, &vocab::standard_prefixes())
}

/// Parses a query with `base` predeclared; `PREFIX` lines in the query
/// override it.
pub fn parse_query_with(text: &str, base: &PrefixMap) -> Result<QueryAst, ParseError> {
    let mut parser = Parser { lexer: Lexer::new(text), prefixes: base.clone() };
    parser.query()
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    prefixes: PrefixMap,
}

fn is_keyword(tok: &Token, keyword: &str) -> bool {
    matches!(tok, Token::Word(w) if w.eq_ignore_ascii_case(keyword))
}

impl Parser<'_> {
    fn query(&mut self) -> Result<QueryAst, ParseError> {
        loop {
            let (pos, tok) = self.lexer.next_token()?;
            match tok {
                ref t if is_keyword(t, "PREFIX") => self.prefix_decl()?,
                ref t if is_keyword(t, "BASE") => return Err(self.lexer.error_at(pos, "BASE is not supported")),
                ref t if is_keyword(t, "SELECT") => break,
                Token::Word(ref w) if UPDATE_KEYWORDS.iter().any(|k| w.eq_ignore_ascii_case(k)) => {
                    return Err(self.lexer.error_at(pos, "SPARQL Update is not supported: the endpoint is read-only"));
                }
                Token::Word(ref w) if ["ASK", "CONSTRUCT", "DESCRIBE"].iter().any(|k| w.eq_ignore_ascii_case(k)) => {
                    return Err(self.lexer.error_at(pos, format!("{} queries are not supported; use SELECT", w.to_uppercase())));
                }
                other => return Err(self.lexer.error_at(pos, format!("expected PREFIX or SELECT, found {other}"))),
            }
        }

        let projection = self.projection()?;
        let (pos, tok) = self.lexer.peek()?.clone();
        if is_keyword(&tok, "WHERE") {
            self.lexer.next_token()?;
        } else if tok != Token::LBrace {
            return Err(self.lexer.error_at(pos, format!("expected WHERE or '{{', found {tok}")));
        }
        let (pos, tok) = self.lexer.next_token()?;
        if tok != Token::LBrace {
            return Err(self.lexer.error_at(pos, format!("expected '{{', found {tok}")));
        }
        let pattern = self.group(pos)?;

        let (pos, tok) = self.lexer.next_token()?;
        match tok {
            Token::Eof => {}
            Token::Word(ref w) if UNSUPPORTED_MODIFIERS.iter().any(|k| w.eq_ignore_ascii_case(k)) => {
                return Err(self.lexer.error_at(pos, format!("{} is not supported", w.to_uppercase())));
            }
            other => return Err(self.lexer.error_at(pos, format!("unexpected {other} after the WHERE clause"))),
        }

        let mut warnings = Vec::new();
        if let Projection::Vars(vars) = &projection {
            let in_pattern = pattern.variables();
            for v in vars.iter().filter(|v| !in_pattern.contains(v)) {
                warnings.push(format!("projected variable {v} does not occur in the pattern"));
            }
        }
        Ok(QueryAst { prefixes: self.prefixes.clone(), projection, pattern, warnings })
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        let (pos, tok) = self.lexer.next_token()?;
        let label = match tok {
            Token::PrefixedName { prefix, local } if local.is_empty() => prefix,
            other => return Err(self.lexer.error_at(pos, format!("expected prefix label like `qreg:`, found {other}"))),
        };
        let (pos, tok) = self.lexer.next_token()?;
        match tok {
            Token::IriRef(iri) => {
                let iri = Iri::new(iri).map_err(|e| self.lexer.error_at(pos, e.to_string()))?;
                self.prefixes.insert(label, iri);
                Ok(())
            }
            other => Err(self.lexer.error_at(pos, format!("expected namespace IRI, found {other}"))),
        }
    }

    fn projection(&mut self) -> Result<Projection, ParseError> {
        let (pos, tok) = self.lexer.peek()?.clone();
        match tok {
            Token::Star => {
                self.lexer.next_token()?;
                Ok(Projection::Star)
            }
            Token::Word(ref w) if w.eq_ignore_ascii_case("DISTINCT") || w.eq_ignore_ascii_case("REDUCED") => {
                Err(self.lexer.error_at(pos, format!("{} is not supported", w.to_uppercase())))
            }
            Token::Var(_) => {
                let mut vars: Vec<Variable> = Vec::new();
                while let (pos, Token::Var(name)) = self.lexer.peek()?.clone() {
                    self.lexer.next_token()?;
                    let var = Variable::new(name).map_err(|e| self.lexer.error_at(pos, e.to_string()))?;
                    if !vars.contains(&var) {
                        vars.push(var);
                    }
                }
                Ok(Projection::Vars(vars))
            }
            other => Err(self.lexer.error_at(pos, format!("expected '*' or a variable list, found {other}"))),
        }
    }

    /// Group body after its opening brace at `open`.
    fn group(&mut self, open: Position) -> Result<GroupPattern, ParseError> {
        let mut group = GroupPattern::default();
        loop {
            let (pos, tok) = self.lexer.peek()?.clone();
            match tok {
                Token::RBrace => {
                    self.lexer.next_token()?;
                    if group.elements.is_empty() {
                        return Err(self.lexer.error_at(open, "empty group pattern"));
                    }
                    return Ok(group);
                }
                Token::Eof => return Err(self.lexer.error_at(pos, "unclosed '{'")),
                Token::Dot => {
                    self.lexer.next_token()?;
                }
                Token::LBrace => {
                    self.lexer.next_token()?;
                    group.elements.push(PatternElement::Group(self.group(pos)?));
                }
                ref t if is_keyword(t, "OPTIONAL") => {
                    self.lexer.next_token()?;
                    let (brace, tok) = self.lexer.next_token()?;
                    if tok != Token::LBrace {
                        return Err(self.lexer.error_at(brace, format!("expected '{{' after OPTIONAL, found {tok}")));
                    }
                    group.elements.push(PatternElement::Optional(self.group(brace)?));
                }
                Token::Word(ref w) if UNSUPPORTED_IN_GROUP.iter().any(|k| w.eq_ignore_ascii_case(k)) => {
                    return Err(self.lexer.error_at(pos, format!("{} is not supported", w.to_uppercase())));
                }
                _ => {
                    self.triples(&mut group)?;
                    let (pos, tok) = self.lexer.peek()?.clone();
                    if let Token::Word(w) = &tok {
                        if UNSUPPORTED_IN_GROUP.iter().any(|k| w.eq_ignore_ascii_case(k)) {
                            return Err(self.lexer.error_at(pos, format!("{} is not supported", w.to_uppercase())));
                        }
                    }
                    if !matches!(tok, Token::Dot | Token::RBrace | Token::LBrace | Token::Eof) && !is_keyword(&tok, "OPTIONAL") {
                        return Err(self.lexer.error_at(pos, format!("expected '.' or '}}', found {tok}")));
                    }
                }
            }
        }
    }

    fn triples(&mut self, group: &mut GroupPattern) -> Result<(), ParseError> {
        let subject = self.term("subject")?;
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.term("object")?;
                group.elements.push(PatternElement::Triple(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                }));
                if matches!(self.lexer.peek()?.1, Token::Comma) {
                    self.lexer.next_token()?;
                } else {
                    break;
                }
            }
            if !matches!(self.lexer.peek()?.1, Token::Semicolon) {
                return Ok(());
            }
            while matches!(self.lexer.peek()?.1, Token::Semicolon) {
                self.lexer.next_token()?;
            }
            if matches!(self.lexer.peek()?.1, Token::Dot | Token::RBrace) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<PatternTerm, ParseError> {
        let (pos, tok) = self.lexer.peek()?.clone();
        if tok == Token::Word("a".into()) {
            self.lexer.next_token()?;
            return Ok(PatternTerm::Term(Term::Iri(vocab::iri(vocab::RDF_TYPE))));
        }
        match self.term("predicate")? {
            PatternTerm::Term(Term::Iri(iri)) => Ok(PatternTerm::Term(Term::Iri(iri))),
            PatternTerm::Var(v) => Ok(PatternTerm::Var(v)),
            PatternTerm::Term(_) => Err(self.lexer.error_at(pos, "a literal cannot be a predicate")),
        }
    }

    fn term(&mut self, role: &str) -> Result<PatternTerm, ParseError> {
        let (pos, tok) = self.lexer.next_token()?;
        match tok {
            Token::Var(name) => Variable::new(name)
                .map(PatternTerm::Var)
                .map_err(|e| self.lexer.error_at(pos, e.to_string())),
            Token::IriRef(iri) => Iri::new(iri)
                .map(|i| PatternTerm::Term(Term::Iri(i)))
                .map_err(|_| self.lexer.error_at(pos, "relative or malformed IRI")),
            Token::PrefixedName { prefix, local } => self
                .prefixes
                .expand(&format!("{prefix}:{local}"))
                .map(|i| PatternTerm::Term(Term::Iri(i)))
                .map_err(|e| match e {
                    ModelError::UnknownPrefix(p) => self.lexer.error_at(pos, format!("unknown prefix `{p}:`")),
                    other => self.lexer.error_at(pos, other.to_string()),
                }),
            Token::Str(text) => self.literal(text).map(PatternTerm::Term),
            Token::LBracket => Err(self.lexer.error_at(pos, "blank nodes are not supported")),
            Token::LParen => Err(self.lexer.error_at(pos, "collections are not supported")),
            other => Err(self.lexer.error_at(pos, format!("expected {role}, found {other}"))),
        }
    }

    fn literal(&mut self, text: String) -> Result<Term, ParseError> {
        match self.lexer.peek()?.clone() {
            (pos, Token::AtWord(lang)) => {
                self.lexer.next_token()?;
                if !is_valid_lang_tag(&lang) {
                    return Err(self.lexer.error_at(pos, format!("invalid language tag `{lang}`")));
                }
                Ok(Term::Lang { text, lang })
            }
            (_, Token::DoubleCaret) => {
                self.lexer.next_token()?;
                let pos = self.lexer.peek()?.0;
                match self.term("datatype")? {
                    PatternTerm::Term(Term::Iri(dt)) => Ok(Term::typed(text, dt)),
                    _ => Err(self.lexer.error_at(pos, "expected a datatype IRI")),
                }
            }
            _ => Ok(Term::Plain(text)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::vocab::qreg;

    const Q1: &str = "SELECT * WHERE{{qreg:Allah qreg:parted ?Answer.}}";
    const Q2: &str = "SELECT ?Concept ?AyatNo ?Ayat WHERE {{qreg:Allah qreg:raised ?Concept.} {?AyatNo qreg:hasPart ?Concept.} OPTIONAL {?AyatNo rdfs:comment ?Ayat.}}";

    fn corpus(text: &str) -> Result<QueryAst, ParseError> {
        parse_query_with(text, &vocab::corpus_prefixes())
    }

    #[test]
    fn query_one_shape() {
        let ast = corpus(Q1).unwrap();
        assert_eq!(ast.projection, Projection::Star);
        assert_eq!(ast.pattern.elements.len(), 1);
        let PatternElement::Group(inner) = &ast.pattern.elements[0] else { panic!("expected a group") };
        assert_eq!(
            inner.elements,
            vec![PatternElement::Triple(TriplePattern::new(qreg("Allah"), qreg("parted"), PatternTerm::var("Answer")))]
        );
    }

    #[test]
    fn query_two_shape() {
        let ast = corpus(Q2).unwrap();
        let kinds: Vec<&str> = ast
            .pattern
            .elements
            .iter()
            .map(|e| match e {
                PatternElement::Triple(_) => "triple",
                PatternElement::Group(_) => "group",
                PatternElement::Optional(_) => "optional",
            })
            .collect();
        assert_eq!(kinds, vec!["group", "group", "optional"]);
        assert_eq!(
            ast.projection,
            Projection::Vars(["Concept", "AyatNo", "Ayat"].iter().map(|v| Variable::new(*v).unwrap()).collect())
        );
        assert!(ast.warnings.is_empty());
    }

    #[test]
    fn no_projection_and_empty_group() {
        let err = corpus("SELECT WHERE {}").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        let err = corpus("SELECT * WHERE {}").unwrap_err();
        assert!(err.message.contains("empty group"));
    }

    #[test]
    fn prefix_declarations_and_unknown_prefixes() {
        let ast = parse_query("PREFIX ex: <http://ex.org/>\nSELECT ?x WHERE { ex:a ex:b ?x }").unwrap();
        assert!(ast.prefixes.get("ex").is_some());
        let err = parse_query("SELECT ?x WHERE {\n  qreg:a qreg:b ?x }").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown prefix"));
    }

    #[test]
    fn where_keyword_is_optional_and_case_insensitive() {
        assert!(corpus("select ?x { ?x a qreg:QuranVerse }").is_ok());
        assert!(corpus("SELECT ?x where { ?x a qreg:QuranVerse . }").is_ok());
    }

    #[test]
    fn predicate_object_lists_and_literals() {
        let ast = corpus(r#"SELECT * { ?v a qreg:QuranVerse ; rdfs:comment "x"@en , "y"^^xsd:string . }"#).unwrap();
        assert_eq!(ast.pattern.elements.len(), 3);
    }

    #[test]
    fn unsupported_constructs() {
        for (query, needle) in [
            ("INSERT DATA { qreg:a qreg:b qreg:c }", "read-only"),
            ("DELETE WHERE { ?s ?p ?o }", "read-only"),
            ("ASK { ?s ?p ?o }", "SELECT"),
            ("SELECT DISTINCT ?s { ?s ?p ?o }", "DISTINCT"),
            ("SELECT ?s { ?s ?p ?o FILTER(?s) }", "FILTER"),
            ("SELECT ?s { ?s ?p ?o } LIMIT 1", "LIMIT"),
            ("SELECT ?s { ?s ?p [] }", "blank node"),
            ("SELECT ?s { ?s ?p ?o ?x ?y ?z }", "expected '.'"),
            ("SELECT ?s { ?s \"lit\" ?o }", "predicate"),
            ("SELECT ?s { ?s ?p ?o ", "unclosed"),
            ("SELECT", "expected '*'"),
        ] {
            let err = corpus(query).unwrap_err();
            assert!(err.message.contains(needle), "{query}: {err}");
        }
    }

    #[test]
    fn unused_projection_warns() {
        let ast = corpus("SELECT ?nothing { ?s ?p ?o }").unwrap();
        assert_eq!(ast.warnings.len(), 1);
    }
}
